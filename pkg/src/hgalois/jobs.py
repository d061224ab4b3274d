"""Job files: a single JSON document describing an algebra, optional
structure blocks, and a list of commands to run against them.

Coefficients are always strings ("3/2", "-1"), words are arrays of tokens
with exponent sugar ("g^-2" means two inverse atoms); floating point is
rejected everywhere.
"""

import json
import re

from .errors import CharacteristicError, InputError, JobError
from .fields import field_from_spec
from .hopf_galois import (
    MU_SIGNATURE,
    HopfGaloisStructure,
    HopfStructure,
    hopf_structure,
    mu_map,
)
from .maps import GeneratorMap
from .ore import OreData, PoissonOreData
from .poisson import PoissonStructure
from .presentations import AlgebraPresentation, Element, GeneratorSymbol
from .tensors import PLAIN, TensorElement

_TOKEN_RE = re.compile(r"^([^\^\*\s]+?)(?:\^(-?\d+))?$")

KNOWN_COMMANDS = (
    "check-hopf-galois",
    "check-poisson",
    "check-poisson-hg",
    "check-poisson-hopf",
    "convert hopf-to-galois",
    "convert galois-to-hopf",
    "ore-extend",
    "check-thm28",
    "poisson-ore-extend",
    "check-thm44",
    "build-envelope",
    "check-lemma55",
    "check-thm59",
    "pushforward",
)


def expand_token(token: str, path: str):
    m = _TOKEN_RE.match(str(token))
    if not m:
        raise JobError(path, f"cannot parse word token {token!r}")
    name, exp = m.group(1), m.group(2)
    n = 1 if exp is None else int(exp)
    if n >= 0:
        return (name,) * n
    return (name + "^-1",) * (-n)


def parse_word(tokens, path: str):
    if not isinstance(tokens, list):
        raise JobError(path, "word must be an array of tokens")
    word = ()
    for i, token in enumerate(tokens):
        word += expand_token(token, f"{path}[{i}]")
    return word


class Job:
    """Parsed job: the presentation plus lazily-built structure blocks."""

    def __init__(self, doc: dict, *, name="job", cap_override=None):
        if not isinstance(doc, dict):
            raise JobError(name, "job document must be a JSON object")
        self.doc = doc
        self.name = doc.get("name", name)
        self.field = field_from_spec(doc.get("field", "rationals"))
        forbidden = doc.get("forbidden_characteristics", [])
        if self.field.characteristic in forbidden:
            raise CharacteristicError(
                f"{self.name}: structure is not defined in characteristic "
                f"{self.field.characteristic}"
            )
        self.cap_override = cap_override
        self.cap = cap_override if cap_override is not None else int(doc.get("cap", 12))
        self.commands = list(doc.get("commands", []))
        for c in self.commands:
            if c not in KNOWN_COMMANDS:
                raise JobError(f"{self.name}.commands", f"unknown command {c!r}")
        self._presentation = None

    # ------------------------------------------------------------------
    def coeff(self, text, path):
        if isinstance(text, float):
            raise JobError(path, "floating-point coefficients are not accepted")
        try:
            return self.field.parse(text)
        except InputError as exc:
            raise JobError(path, str(exc))

    def element(self, pres, data, path) -> Element:
        """[{"coeff": str, "word": [tokens]}] -> Element."""
        if not isinstance(data, list):
            raise JobError(path, "element must be an array of terms")
        terms = {}
        for i, term in enumerate(data):
            tpath = f"{path}[{i}]"
            if not isinstance(term, dict) or set(term) - {"coeff", "word"}:
                raise JobError(tpath, 'term must be {"coeff": ..., "word": [...]}')
            word = parse_word(term.get("word", []), f"{tpath}.word")
            try:
                pres.validate_word(word)
            except InputError as exc:
                raise JobError(f"{tpath}.word", str(exc))
            c = self.coeff(term.get("coeff", "1"), f"{tpath}.coeff")
            terms[word] = terms.get(word, self.field.zero) + c
        return pres.element(terms)

    def tensor(self, pres_tuple, signature, data, path) -> TensorElement:
        if not isinstance(data, list):
            raise JobError(path, "tensor must be an array of terms")
        terms = {}
        for i, term in enumerate(data):
            tpath = f"{path}[{i}]"
            if not isinstance(term, dict) or set(term) - {"coeff", "factors"}:
                raise JobError(tpath, 'term must be {"coeff": ..., "factors": [...]}')
            factors = term.get("factors", [])
            if not isinstance(factors, list) or len(factors) != len(pres_tuple):
                raise JobError(f"{tpath}.factors",
                               f"expected {len(pres_tuple)} factor words")
            key = tuple(
                parse_word(w, f"{tpath}.factors[{k}]") for k, w in enumerate(factors)
            )
            for k, w in enumerate(key):
                try:
                    pres_tuple[k].validate_word(w)
                except InputError as exc:
                    raise JobError(f"{tpath}.factors[{k}]", str(exc))
            c = self.coeff(term.get("coeff", "1"), f"{tpath}.coeff")
            terms[key] = terms.get(key, self.field.zero) + c
        return TensorElement(pres_tuple, signature, terms, self.field)

    # ------------------------------------------------------------------
    def parse_presentation(self, block, path, *, cap=None) -> AlgebraPresentation:
        if not isinstance(block, dict):
            raise JobError(path, "presentation must be an object")
        gens = []
        for i, g in enumerate(block.get("generators", [])):
            gpath = f"{path}.generators[{i}]"
            if isinstance(g, str):
                g = {"name": g}
            if not isinstance(g, dict) or "name" not in g:
                raise JobError(gpath, 'generator must be {"name": ..., "invertible"?: bool}')
            try:
                gens.append(GeneratorSymbol(g["name"], bool(g.get("invertible", False))))
            except InputError as exc:
                raise JobError(gpath, str(exc))
        if not gens:
            raise JobError(f"{path}.generators", "at least one generator is required")
        relations = []
        names = {g.name for g in gens}
        inv_names = {g.name + "^-1" for g in gens if g.invertible}
        valid = names | inv_names
        for i, rel in enumerate(block.get("relations", [])):
            rpath = f"{path}.relations[{i}]"
            if not isinstance(rel, dict) or "lhs" not in rel:
                raise JobError(rpath, 'relation must be {"lhs": [...], "rhs": [...]}')
            lhs = parse_word(rel["lhs"], f"{rpath}.lhs")
            for atom in lhs:
                if atom not in valid:
                    raise JobError(f"{rpath}.lhs", f"unknown generator token {atom!r}")
            rhs_terms = {}
            for j, term in enumerate(rel.get("rhs", [])):
                tpath = f"{rpath}.rhs[{j}]"
                word = parse_word(term.get("word", []), f"{tpath}.word")
                for atom in word:
                    if atom not in valid:
                        raise JobError(f"{tpath}.word", f"unknown generator token {atom!r}")
                c = self.coeff(term.get("coeff", "1"), f"{tpath}.coeff")
                rhs_terms[word] = rhs_terms.get(word, self.field.zero) + c
            relations.append((lhs, rhs_terms))
        if cap is None:
            cap = self.cap_override if self.cap_override is not None \
                else int(block.get("cap", self.cap))
        try:
            return AlgebraPresentation(
                self.field, gens, relations,
                commutative=bool(block.get("commutative", False)),
                cap=cap,
                name=block.get("name", self.name),
            )
        except InputError as exc:
            raise JobError(path, str(exc))

    @property
    def presentation(self) -> AlgebraPresentation:
        if self._presentation is None:
            if "presentation" not in self.doc:
                raise JobError(self.name, 'missing "presentation" block')
            self._presentation = self.parse_presentation(
                self.doc["presentation"], f"{self.name}.presentation")
        return self._presentation

    # ------------------------------------------------------------------
    def generator_images(self, pres, block, path, *, target=None) -> dict:
        """{"gen": element-data} -> {atom: Element of target (default pres)}."""
        target = target or pres
        if not isinstance(block, dict):
            raise JobError(path, "expected an object of generator images")
        return {
            atom: self.element(target, data, f"{path}.{atom}")
            for atom, data in block.items()
        }

    def hopf_galois(self) -> HopfGaloisStructure:
        if "mu" not in self.doc:
            raise JobError(self.name, 'this command needs a "mu" block')
        pres = self.presentation
        triple = (pres, pres, pres)
        images = {}
        for atom, data in self.doc["mu"].items():
            images[atom] = self.tensor(triple, MU_SIGNATURE, data,
                                       f"{self.name}.mu.{atom}")
        try:
            return HopfGaloisStructure(pres, mu_map(pres, images))
        except InputError as exc:
            raise JobError(f"{self.name}.mu", str(exc))

    def poisson(self) -> PoissonStructure:
        pres = self.presentation
        table = {}
        for i, entry in enumerate(self.doc.get("bracket", [])):
            path = f"{self.name}.bracket[{i}]"
            if not isinstance(entry, dict) or "pair" not in entry:
                raise JobError(path, 'bracket entry must be {"pair": [a, b], "value": [...]}')
            pair = entry["pair"]
            if not isinstance(pair, list) or len(pair) != 2:
                raise JobError(f"{path}.pair", "pair must name two generators")
            value = self.element(pres, entry.get("value", []), f"{path}.value")
            table[(pair[0], pair[1])] = value
        try:
            return PoissonStructure(pres, table)
        except InputError as exc:
            raise JobError(f"{self.name}.bracket", str(exc))

    def hopf(self) -> HopfStructure:
        if "hopf" not in self.doc:
            raise JobError(self.name, 'this command needs a "hopf" block')
        block = self.doc["hopf"]
        pres = self.presentation
        path = f"{self.name}.hopf"
        for key in ("comultiplication", "counit", "antipode"):
            if key not in block:
                raise JobError(path, f'missing "{key}"')
        delta = {
            atom: self.tensor((pres, pres), (PLAIN, PLAIN), data,
                              f"{path}.comultiplication.{atom}")
            for atom, data in block["comultiplication"].items()
        }
        counit = {
            atom: self.coeff(value, f"{path}.counit.{atom}")
            for atom, value in block["counit"].items()
        }
        antipode = self.generator_images(pres, block["antipode"], f"{path}.antipode")
        try:
            return hopf_structure(pres, delta, counit, antipode)
        except InputError as exc:
            raise JobError(path, str(exc))

    def alpha_map(self) -> GeneratorMap:
        if "alpha" not in self.doc:
            raise JobError(self.name, 'this command needs an "alpha" block')
        pres = self.presentation
        images = {
            atom: self.coeff(value, f"{self.name}.alpha.{atom}")
            for atom, value in self.doc["alpha"].items()
        }
        try:
            return GeneratorMap.scalar_map(pres, images, name="alpha")
        except InputError as exc:
            raise JobError(f"{self.name}.alpha", str(exc))

    def ore_data(self) -> tuple:
        if "ore" not in self.doc:
            raise JobError(self.name, 'this command needs an "ore" block')
        block = self.doc["ore"]
        pres = self.presentation
        path = f"{self.name}.ore"
        if "tau" not in block:
            raise JobError(path, 'missing "tau"')
        try:
            tau = GeneratorMap.algebra_map(
                pres, pres, self.generator_images(pres, block["tau"], f"{path}.tau"),
                name="tau")
            tau_inverse = None
            if "tau_inverse" in block:
                tau_inverse = GeneratorMap.algebra_map(
                    pres, pres,
                    self.generator_images(pres, block["tau_inverse"], f"{path}.tau_inverse"),
                    name="tau_inverse")
            delta = self.generator_images(pres, block.get("delta", {}), f"{path}.delta")
            cap = self.cap_override if self.cap_override is not None \
                else int(block.get("cap", 8))
            data = OreData(pres, tau, delta, tau_inverse=tau_inverse,
                           variable=block.get("variable", "z"), cap=cap)
        except InputError as exc:
            raise JobError(path, str(exc))
        g = self.element(pres, block.get("grouplike", []), f"{path}.grouplike")
        if g.is_zero():
            raise JobError(f"{path}.grouplike", "a group-like element is required")
        return data, g

    def poisson_ore_data(self) -> tuple:
        if "poisson_ore" not in self.doc:
            raise JobError(self.name, 'this command needs a "poisson_ore" block')
        block = self.doc["poisson_ore"]
        pres = self.presentation
        path = f"{self.name}.poisson_ore"
        try:
            data = PoissonOreData(
                self.poisson(),
                self.generator_images(pres, block.get("alpha", {}), f"{path}.alpha"),
                self.generator_images(pres, block.get("delta", {}), f"{path}.delta"),
                variable=block.get("variable", "x"),
                cap=self.cap_override if self.cap_override is not None
                else int(block.get("cap", 8)))
        except InputError as exc:
            raise JobError(path, str(exc))
        g = self.element(pres, block.get("grouplike", []), f"{path}.grouplike")
        if g.is_zero():
            raise JobError(f"{path}.grouplike", "a group-like element is required")
        return data, g

    def envelope_cap(self) -> int:
        block = self.doc.get("envelope", {})
        if not isinstance(block, dict):
            raise JobError(f"{self.name}.envelope", "envelope block must be an object")
        if self.cap_override is not None:
            return self.cap_override
        return int(block.get("cap", 6))

    def lemma55_words(self, pres):
        block = self.doc.get("envelope", {})
        words = block.get("sample_words")
        if words is None:
            return None
        out = []
        for i, w in enumerate(words):
            word = parse_word(w, f"{self.name}.envelope.sample_words[{i}]")
            try:
                out.append(pres.validate_word(word))
            except InputError as exc:
                raise JobError(f"{self.name}.envelope.sample_words[{i}]", str(exc))
        return out

    def quotient(self) -> tuple:
        if "quotient" not in self.doc:
            raise JobError(self.name, 'this command needs a "quotient" block')
        block = self.doc["quotient"]
        path = f"{self.name}.quotient"
        if "presentation" not in block or "map" not in block or "section" not in block:
            raise JobError(path, 'quotient needs "presentation", "map", and "section"')
        pres = self.presentation
        target = self.parse_presentation(block["presentation"], f"{path}.presentation")
        try:
            f = GeneratorMap.algebra_map(
                pres, target,
                self.generator_images(pres, block["map"], f"{path}.map", target=target),
                name="f")
        except InputError as exc:
            raise JobError(f"{path}.map", str(exc))
        section = {
            atom: self.element(pres, data, f"{path}.section.{atom}")
            for atom, data in block["section"].items()
        }
        ideal = [
            self.element(pres, data, f"{path}.ideal[{i}]")
            for i, data in enumerate(block.get("ideal", []))
        ]
        return f, section, ideal, target


def load_job(path: str, *, cap_override=None) -> Job:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise JobError(path, f"cannot read job file: {exc}")
    except json.JSONDecodeError as exc:
        raise JobError(path, f"invalid JSON: {exc}")
    name = doc.get("name", path) if isinstance(doc, dict) else path
    return Job(doc, name=name, cap_override=cap_override)
