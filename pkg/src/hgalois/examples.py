"""Bundled example jobs, each carrying the anchor of the statement it
instantiates so reports can be audited against the source definitions."""

from .errors import InputError


def _t(coeff, *factors):
    return {"coeff": coeff, "factors": [list(f) for f in factors]}


def _e(coeff, *word):
    return {"coeff": coeff, "word": list(word)}


def sweedler_h4():
    return {
        "name": "sweedler_h4",
        "field": "rationals",
        "forbidden_characteristics": [2],
        "presentation": {
            "generators": [{"name": "g"}, {"name": "x"}],
            "relations": [
                {"lhs": ["g", "g"], "rhs": [_e("1")]},
                {"lhs": ["x", "x"], "rhs": []},
                {"lhs": ["x", "g"], "rhs": [_e("-1", "g", "x")]},
            ],
        },
        "mu": {
            "g": [_t("1", ["g"], ["g"], ["g"])],
            "x": [
                _t("1", ["x"], [], []),
                _t("-1", ["g"], ["g", "x"], []),
                _t("1", ["g"], ["g"], ["x"]),
            ],
        },
        "hopf": {
            "comultiplication": {
                "g": [_t("1", ["g"], ["g"])],
                "x": [_t("1", ["x"], []), _t("1", ["g"], ["x"])],
            },
            "counit": {"g": "1", "x": "0"},
            "antipode": {"g": [_e("1", "g")], "x": [_e("-1", "g", "x")]},
        },
        "alpha": {"g": "1", "x": "0"},
        "commands": ["check-hopf-galois"],
    }


def _laurent_example(lam: str, name: str):
    return {
        "name": name,
        "field": "rationals",
        "presentation": {
            "generators": [{"name": "g", "invertible": True}, {"name": "x"}],
            "commutative": True,
        },
        "bracket": [{"pair": ["x", "g"], "value": [_e(lam, "g", "x")]}],
        "mu": {
            "g": [_t("1", ["g"], ["g^-1"], ["g"])],
            "x": [
                _t("1", [], [], ["x"]),
                _t("-1", [], ["x", "g"], ["g^-1"]),
                _t("1", ["x"], ["g"], ["g^-1"]),
            ],
        },
        "alpha": {"g": "1", "x": "0"},
        "commands": ["check-poisson", "check-poisson-hg"],
    }


def laurent_lambda1():
    return _laurent_example("1", "laurent_lambda1")


def laurent_lambda2():
    return _laurent_example("2", "laurent_lambda2")


def ore_q2_laurent():
    return {
        "name": "ore_q2_laurent",
        "field": "rationals",
        "forbidden_characteristics": [2],
        "presentation": {
            "generators": [{"name": "g", "invertible": True}],
            "commutative": True,
        },
        "mu": {"g": [_t("1", ["g"], ["g^-1"], ["g"])]},
        "ore": {
            "variable": "z",
            "cap": 8,
            "tau": {"g": [_e("2", "g")]},
            "tau_inverse": {"g": [_e("1/2", "g")]},
            "delta": {"g": []},
            "grouplike": [_e("1", "g")],
        },
        "commands": ["check-thm28", "ore-extend"],
    }


def poisson_ore_laurent():
    return {
        "name": "poisson_ore_laurent",
        "field": "rationals",
        "presentation": {
            "generators": [{"name": "g", "invertible": True}],
            "commutative": True,
        },
        "bracket": [],
        "mu": {"g": [_t("1", ["g"], ["g^-1"], ["g"])]},
        "poisson_ore": {
            "variable": "x",
            "cap": 8,
            "alpha": {"g": []},
            "delta": {"g": [_e("1", "g")]},
            "grouplike": [_e("1", "g")],
        },
        "commands": ["check-thm44", "poisson-ore-extend"],
    }


def z2_zero_bracket():
    return {
        "name": "z2_zero_bracket",
        "field": "rationals",
        "forbidden_characteristics": [2],
        "presentation": {
            "generators": [{"name": "c"}],
            "commutative": True,
            "relations": [{"lhs": ["c", "c"], "rhs": [_e("1")]}],
        },
        "bracket": [],
        "mu": {"c": [_t("1", ["c"], ["c"], ["c"])]},
        "envelope": {"cap": 6},
        "commands": ["build-envelope", "check-thm59"],
    }


def kxy_truncated():
    return {
        "name": "kxy_truncated",
        "field": "rationals",
        "forbidden_characteristics": [2, 3],
        "presentation": {
            "generators": [{"name": "x"}, {"name": "y"}],
            "commutative": True,
            "relations": [
                {"lhs": ["x^3"], "rhs": []},
                {"lhs": ["x^2", "y"], "rhs": []},
                {"lhs": ["x", "y^2"], "rhs": []},
                {"lhs": ["y^3"], "rhs": []},
            ],
        },
        "bracket": [{"pair": ["x", "y"], "value": [_e("1", "x")]}],
        "envelope": {"cap": 4, "sample_words": [[], ["x"], ["y"]]},
        "commands": ["check-poisson", "check-lemma55"],
    }


def laurent_mod_x():
    doc = _laurent_example("1", "laurent_mod_x")
    doc["quotient"] = {
        "presentation": {
            "generators": [{"name": "h", "invertible": True}],
            "commutative": True,
            "name": "laurent_mod_x.quotient",
        },
        "map": {"g": [_e("1", "h")], "x": []},
        "section": {"h": [_e("1", "g")]},
        "ideal": [[_e("1", "x")]],
    }
    doc["commands"] = ["pushforward"]
    return doc


BUILTINS = {
    "sweedler_h4": (
        sweedler_h4, "Example 2.5",
        "4-dimensional Sweedler algebra with its Hopf-Galois structure map",
    ),
    "laurent_lambda1": (
        laurent_lambda1, "Example 3.8 (lambda=1)",
        "k[g,g^-1,x] with bracket {x,g} = g x and its Poisson Hopf-Galois map",
    ),
    "laurent_lambda2": (
        laurent_lambda2, "Example 3.8 (lambda=2)",
        "k[g,g^-1,x] with bracket {x,g} = 2 g x",
    ),
    "ore_q2_laurent": (
        ore_q2_laurent, "Theorem 2.8 / Prop 2.7",
        "Ore extension of k[g,g^-1] with tau(g) = 2g, delta = 0",
    ),
    "poisson_ore_laurent": (
        poisson_ore_laurent, "Theorem 4.4",
        "Poisson Ore extension of k[g,g^-1] with alpha = 0, delta(g) = g",
    ),
    "z2_zero_bracket": (
        z2_zero_bracket, "Theorem 5.9 / Def 5.1",
        "group algebra of Z/2 with zero bracket and its Poisson envelope",
    ),
    "kxy_truncated": (
        kxy_truncated, "Lemma 5.5 / Lemma 5.7",
        "6-dimensional truncation of k[x,y] with {x,y} = x",
    ),
    "laurent_mod_x": (
        laurent_mod_x, "Remark 3.6(1)",
        "quotient of the lambda=1 example by the Poisson ideal (x)",
    ),
}


def builtin_job(name: str) -> dict:
    try:
        factory, _, _ = BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTINS))
        raise InputError(f"unknown builtin {name!r}; known: {known}")
    return factory()


def builtin_listing() -> list:
    return [
        {"name": name, "anchor": anchor, "description": description}
        for name, (_, anchor, description) in sorted(BUILTINS.items())
    ]
