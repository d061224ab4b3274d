"""Ore extensions A[z; tau, delta] and Poisson Ore extensions B[x; alpha, delta],
with the criteria that decide when a structure map extends over them.

delta data is given per generator atom; images of formal inverses default
to the forced values (0 = delta(g g^-1) determines delta(g^-1)) but may be
supplied explicitly, in which case they are taken literally — the
extension criteria below then check the given data instead of silently
repairing it.
"""

import itertools

from .errors import InputError
from .hopf_galois import HopfGaloisStructure, is_grouplike, mu_map
from .maps import GeneratorMap, check_map_respects_relations
from .presentations import (
    AlgebraPresentation,
    Element,
    GeneratorSymbol,
    inverse_atom,
    transport_element,
    word_str,
)
from .poisson import PoissonHopfGaloisStructure, PoissonStructure, check_poisson_hg
from .reports import VerificationReport
from .tensors import TensorElement

ANCHOR_ORE_RELATION = "Ore relation z a = tau(a) z + delta(a)"
ANCHOR_SIGMA_DERIVATION = "tau-derivation law"
ANCHOR_THM28 = {1: "Thm 2.8 condition (1)", 2: "Thm 2.8 condition (2)",
                3: "Thm 2.8 condition (3)"}
ANCHOR_MU_Z = "Thm 2.8 / Prop 2.7 mu(z)"
ANCHOR_POISSON_DERIVATION = "Def 4.1 Eq (4.1)-(4.2)"
ANCHOR_DELTA_TWIST = "Remark 4.2 Eq (4.3)"
ANCHOR_ORE_BRACKET = "Remark 4.2 Eq (4.4)"
ANCHOR_THM44 = {6: "Thm 4.4 Eq (4.6)", 7: "Thm 4.4 Eq (4.7)", 8: "Thm 4.4 Eq (4.8)",
                9: "Thm 4.4 Eq (4.9)", 10: "Thm 4.4 Eq (4.10)"}
ANCHOR_MU_X = "Thm 4.4 Eq (4.5) mu(x)"


def _complete_inverse_images(pres, images, derive, label):
    """Fill in images of formal inverses using `derive` when not supplied."""
    out = {}
    for atom, val in images.items():
        pres.atom_key(atom)
        if not isinstance(val, Element) or val.presentation is not pres:
            raise InputError(f"{label}({atom}) must be an element of the base algebra")
        out[atom] = pres.normal_form(val)
    for gen in pres.generators:
        if gen.name not in out:
            raise InputError(f"{label}: missing image for generator {gen.name!r}")
        if gen.invertible:
            inv = inverse_atom(gen.name)
            if inv not in out:
                out[inv] = pres.normal_form(derive(gen.name, out[gen.name]))
    return out


class OreData:
    """Data of an Ore extension: an endomorphism tau and a tau-derivation
    delta of the base algebra, plus the fresh variable name."""

    def __init__(self, base: AlgebraPresentation, tau: GeneratorMap,
                 delta: dict, *, tau_inverse: GeneratorMap = None,
                 variable: str = "z", cap: int = 8):
        if tau.source is not base or tau.rank != 1 or tau.targets[0] is not base:
            raise InputError("tau must be a rank-1 endomorphism of the base algebra")
        if tau_inverse is not None and (
            tau_inverse.source is not base or tau_inverse.rank != 1
            or tau_inverse.targets[0] is not base
        ):
            raise InputError("tau inverse must be a rank-1 endomorphism of the base algebra")
        self.base = base
        self.tau = tau
        self.tau_inverse = tau_inverse
        self.variable = variable
        self.cap = cap

        def derive(gen_name, delta_g):
            # 0 = delta(g g^-1) = tau(g) delta(g^-1) + delta(g) g^-1
            tau_g = tau.apply_element(base.atom_element(gen_name))
            tau_g_inv = base.invert(tau_g)
            if tau_g_inv is None:
                raise InputError(
                    f"delta: cannot derive delta({inverse_atom(gen_name)}); "
                    f"tau({gen_name}) is not invertible"
                )
            g_inv = base.atom_element(inverse_atom(gen_name))
            return -(tau_g_inv * delta_g * g_inv)

        self.delta_images = _complete_inverse_images(base, delta, derive, "delta")

    def delta_word(self, word) -> Element:
        """delta of a raw word by the left-to-right splitting
        delta(a w) = tau(a) delta(w) + delta(a) w."""
        base = self.base
        out = base.zero()
        for i, atom in enumerate(word):
            head = base.element({tuple(word[:i]): base.field.one})
            tail = base.element({tuple(word[i + 1:]): base.field.one})
            out = out + self.tau.apply_element(head) * self.delta_images[atom] * tail
        return out

    def delta_apply(self, value: Element) -> Element:
        base = self.base
        if value.presentation is not base:
            raise InputError("delta: element from a different presentation")
        out = base.zero()
        for word, coeff in value.terms.items():
            out = out + self.delta_word(word).scale(coeff)
        return out

    def validate(self):
        """Raise InputError unless tau is a (checked) algebra map, the
        supplied tau inverse really inverts it, and delta is well defined
        against every base relation."""
        rep = check_map_respects_relations(self.tau, anchor=ANCHOR_ORE_RELATION)
        if not rep.passed:
            bad = rep.failures()[0]
            raise InputError(f"tau is not an algebra map; fails on {bad.subject}")
        if self.tau_inverse is not None:
            rep = check_map_respects_relations(self.tau_inverse, anchor=ANCHOR_ORE_RELATION)
            if not rep.passed:
                bad = rep.failures()[0]
                raise InputError(f"tau inverse is not an algebra map; fails on {bad.subject}")
            for atom in self.base.atoms:
                e = self.base.atom_element(atom)
                there = self.tau.apply_element(self.tau_inverse.apply_element(e))
                back = self.tau_inverse.apply_element(self.tau.apply_element(e))
                if there != e or back != e:
                    raise InputError(f"tau inverse does not invert tau on generator {atom}")
        for rule in self.base.rules:
            # the raw left-hand word, not its normal form, must agree
            lhs = self.delta_word(rule.lhs)
            rhs = self.delta_apply(rule.rhs)
            if lhs != rhs:
                raise InputError(
                    f"delta is not well defined: fails on relation "
                    f"{word_str(rule.lhs)} -> {rule.rhs}"
                )


def build_ore(d: OreData) -> AlgebraPresentation:
    """The extension with rewrite rules  z a -> tau(a) z + delta(a); normal
    forms are base words followed by a power of z."""
    d.validate()
    base = d.base
    z = d.variable
    if z in {g.name for g in base.generators}:
        raise InputError(f"variable name {z!r} clashes with a base generator")
    relations = list(base.user_relations)
    if base.commutative:
        # regenerated here because the extension itself is noncommutative
        for s, t in itertools.combinations(base.atoms, 2):
            if base.generator_of(s) is base.generator_of(t):
                continue
            relations.append(((t, s), {(s, t): base.field.one}))
    for atom in base.atoms:
        rhs: dict = {}
        tau_a = d.tau.apply_element(base.atom_element(atom))
        for w, c in tau_a.terms.items():
            key = w + (z,)
            rhs[key] = rhs.get(key, base.field.zero) + c
        for w, c in d.delta_images[atom].terms.items():
            rhs[w] = rhs.get(w, base.field.zero) + c
        relations.append(((z, atom), {w: c for w, c in rhs.items() if c}))
    return AlgebraPresentation(
        base.field,
        [GeneratorSymbol(g.name, g.invertible) for g in base.generators]
        + [GeneratorSymbol(z)],
        relations,
        commutative=False,
        cap=d.cap,
        name=f"{base.name or 'A'}[{z}]",
    )


def _conjugate(g: Element, g_inv: Element):
    def fun(e: Element) -> Element:
        return g * e * g_inv
    return fun


def check_thm28(d: OreData, h: HopfGaloisStructure, g: Element) -> VerificationReport:
    """The three tensor identities that make mu extend over A[z; tau, delta]
    with mu(z) = z ⊗ 1 ⊗ 1 + g ⊗ g^-1 ⊗ z - g ⊗ g^-1 z ⊗ 1."""
    if h.presentation is not d.base:
        raise InputError("check_thm28: structure and Ore data disagree on the base algebra")
    d.validate()
    if d.tau_inverse is None:
        raise InputError("check_thm28: condition (3) needs the inverse of tau; supply it")
    glike = is_grouplike(h, g)
    if not glike:
        raise InputError(f"check_thm28: g is not group-like ({glike.reason})")
    g_inv = glike.inverse
    base = d.base
    conj = _conjugate(g, g_inv)
    tau = d.tau.apply_element
    tau_inv = d.tau_inverse.apply_element

    report = VerificationReport()
    for atom in base.atoms:
        t = h.mu.apply_word((atom,))
        a_elem = base.atom_element(atom)

        mu_tau = h.mu.apply(tau(a_elem))
        first = t.slot_transform(0, tau)
        all_three = first.slot_transform(1, tau).slot_transform(2, tau)
        diff = (mu_tau - first) or (first - all_three)
        report.add("mu-tau compatibility", ANCHOR_THM28[1], f"generator {atom}",
                   not diff, None if not diff else diff)

        lhs2 = t.slot_transform(0, conj).slot_transform(1, conj)
        rhs2 = t.slot_transform(0, tau).slot_transform(1, tau)
        diff = lhs2 - rhs2
        report.add("conjugation matches tau", ANCHOR_THM28[2], f"generator {atom}",
                   not diff, None if not diff else diff)

        term1 = t.slot_transform(0, d.delta_apply)
        term2 = (t.slot_transform(0, lambda e: g * e)
                 .slot_transform(1, lambda e: e * g_inv)
                 .slot_transform(2, d.delta_apply))
        term3 = (t.slot_transform(0, lambda e: g * e)
                 .slot_transform(1, lambda e: g_inv * d.delta_apply(tau_inv(conj(e)))))
        rhs3 = h.mu.apply(d.delta_apply(a_elem))
        diff = (term1 + term2 + term3) - rhs3
        report.add("delta compatibility", ANCHOR_THM28[3], f"generator {atom}",
                   not diff, None if not diff else diff)
    return report


def mu_z_tensor(ore_pres, g: Element, g_inv: Element, variable: str) -> TensorElement:
    """mu(z) = z ⊗ 1 ⊗ 1 + g ⊗ g^-1 ⊗ z - g ⊗ g^-1 z ⊗ 1 over the extension."""
    from .hopf_galois import MU_SIGNATURE

    g_t = transport_element(g, ore_pres)
    gi_t = transport_element(g_inv, ore_pres)
    z_el = ore_pres.atom_element(variable)
    one = ore_pres.one()
    return (TensorElement.outer([z_el, one, one], MU_SIGNATURE)
            + TensorElement.outer([g_t, gi_t, z_el], MU_SIGNATURE)
            - TensorElement.outer([g_t, gi_t * z_el, one], MU_SIGNATURE))


def extend_mu_ore(d: OreData, h: HopfGaloisStructure, g: Element) -> HopfGaloisStructure:
    """Build A[z; tau, delta] with the extended structure map; refuses when
    any extension criterion fails."""
    report = check_thm28(d, h, g)
    if not report.passed:
        bad = report.failures()[0]
        raise InputError(f"mu does not extend over the Ore extension: "
                         f"{bad.check} fails for {bad.subject}")
    ore_pres = build_ore(d)
    glike = is_grouplike(h, g)
    images = {
        atom: img.transport((ore_pres, ore_pres, ore_pres))
        for atom, img in h.mu.images.items()
    }
    images[d.variable] = mu_z_tensor(ore_pres, g, glike.inverse, d.variable)
    return HopfGaloisStructure(ore_pres, mu_map(ore_pres, images))


# ----------------------------------------------------------------------
# Poisson Ore extensions

class PoissonOreData:
    """Data of a Poisson Ore extension: a Poisson derivation alpha and a
    multiplicative derivation delta of the base, extending the bracket by
    {x, b} = alpha(b) x + delta(b)."""

    def __init__(self, base: PoissonStructure, alpha: dict, delta: dict,
                 *, variable: str = "x", cap: int = 8):
        self.base = base
        self.variable = variable
        self.cap = cap
        pres = base.presentation

        def derive(gen_name, image):
            # 0 = f(g g^-1) = f(g) g^-1 + g f(g^-1)  for a derivation f
            inv = pres.atom_element(inverse_atom(gen_name))
            return -(inv * inv * image)

        self.alpha_images = _complete_inverse_images(pres, alpha, derive, "alpha")
        self.delta_images = _complete_inverse_images(pres, delta, derive, "delta")

    def _derivation_word(self, images, word) -> Element:
        pres = self.base.presentation
        out = pres.zero()
        for i, atom in enumerate(word):
            rest = pres.element({tuple(word[:i] + word[i + 1:]): pres.field.one})
            out = out + rest * images[atom]
        return out

    def _derivation_apply(self, images, value: Element) -> Element:
        pres = self.base.presentation
        out = pres.zero()
        for word, coeff in value.terms.items():
            out = out + self._derivation_word(images, word).scale(coeff)
        return out

    def alpha_apply(self, value: Element) -> Element:
        return self._derivation_apply(self.alpha_images, value)

    def delta_apply(self, value: Element) -> Element:
        return self._derivation_apply(self.delta_images, value)

    def validate(self):
        """Check well-definedness against the base relations, that alpha is
        a Poisson derivation, and the twisted Lie rule for delta."""
        pres = self.base.presentation
        p = self.base
        for label, images, apply_fn in (
            ("alpha", self.alpha_images, self.alpha_apply),
            ("delta", self.delta_images, self.delta_apply),
        ):
            for rule in pres.rules:
                # the raw left-hand word, not its normal form, must agree
                lhs = self._derivation_word(images, rule.lhs)
                rhs = apply_fn(rule.rhs)
                if lhs != rhs:
                    raise InputError(
                        f"{label} is not well defined: fails on relation "
                        f"{word_str(rule.lhs)} -> {rule.rhs}"
                    )
        for s, t in itertools.combinations(pres.atoms, 2):
            es, et = pres.atom_element(s), pres.atom_element(t)
            br = p.bracket(es, et)
            a_lhs = self.alpha_apply(br)
            a_rhs = p.bracket(self.alpha_apply(es), et) + p.bracket(es, self.alpha_apply(et))
            if a_lhs != a_rhs:
                raise InputError(f"alpha is not a Poisson derivation: fails on pair ({s},{t})")
            d_lhs = self.delta_apply(br)
            d_rhs = (p.bracket(self.delta_apply(es), et)
                     + p.bracket(es, self.delta_apply(et))
                     + self.alpha_apply(es) * self.delta_apply(et)
                     - self.delta_apply(es) * self.alpha_apply(et))
            if d_lhs != d_rhs:
                raise InputError(f"delta fails the twisted Lie rule on pair ({s},{t})")


def extension_presentation(d: PoissonOreData) -> AlgebraPresentation:
    """The commutative polynomial extension B[x] (no bracket validation)."""
    pres = d.base.presentation
    x = d.variable
    if x in {g.name for g in pres.generators}:
        raise InputError(f"variable name {x!r} clashes with a base generator")
    return AlgebraPresentation(
        pres.field,
        [GeneratorSymbol(g.name, g.invertible) for g in pres.generators]
        + [GeneratorSymbol(x)],
        list(pres.user_relations),
        commutative=True,
        cap=d.cap,
        name=f"{pres.name or 'B'}[{x}]",
    )


def build_poisson_ore(d: PoissonOreData) -> PoissonStructure:
    """B[x] with bracket table extended by {x, b} = alpha(b) x + delta(b)."""
    d.validate()
    pres = d.base.presentation
    ext = extension_presentation(d)
    x_el = ext.atom_element(d.variable)
    table = {}
    for (a, b), value in d.base.table.items():
        table[(a, b)] = transport_element(value, ext)
    for gen in pres.generators:
        alpha_g = transport_element(d.alpha_images[gen.name], ext)
        delta_g = transport_element(d.delta_images[gen.name], ext)
        table[(d.variable, gen.name)] = alpha_g * x_el + delta_g
    return PoissonStructure(ext, table)


def check_thm44(d: PoissonOreData, ph: PoissonHopfGaloisStructure,
                g: Element) -> VerificationReport:
    """The five identities deciding whether the bracket extension carries
    the structure map mu(x) = x⊗1⊗1 - g⊗g^-1 x⊗1 + g⊗g^-1⊗x; on success the
    assembled extension is itself re-checked as a Poisson Hopf-Galois algebra.

    The identities are evaluated on the supplied alpha/delta images as
    data; consistency of those images is deliberately part of what the
    conditions test, not a precondition.
    """
    base = d.base
    pres = base.presentation
    if ph.presentation is not pres:
        raise InputError("check_thm44: structure and Ore data disagree on the base algebra")
    glike = is_grouplike(ph.hopf_galois, g)
    if not glike:
        raise InputError(f"check_thm44: g is not group-like ({glike.reason})")
    g_inv = glike.inverse

    ext = extension_presentation(d)
    trip = (ext, ext, ext)
    x_el = ext.atom_element(d.variable)

    def to_ext(e: Element) -> Element:
        return transport_element(e, ext)

    def to_base(e: Element) -> Element:
        return transport_element(e, pres)

    def bracket_ginv_x(e_ext: Element) -> Element:
        # {g^-1 x, b} = g^-1 (alpha(b) x + delta(b)) + {g^-1, b} x  for b in B
        b = to_base(e_ext)
        lead = to_ext(base.bracket(g_inv, b)) * x_el
        core = to_ext(g_inv * d.alpha_apply(b)) * x_el + to_ext(g_inv * d.delta_apply(b))
        return lead + core

    report = VerificationReport()
    atoms = pres.atoms
    for atom in atoms:
        a_elem = pres.atom_element(atom)
        t = ph.mu.apply_word((atom,))

        lhs6 = d.alpha_images[atom]
        rhs6 = g_inv * base.bracket(g, a_elem)
        diff = lhs6 - rhs6
        report.add("alpha determined by g", ANCHOR_THM44[6], f"generator {atom}",
                   not diff, None if not diff else diff)

        lhs7 = ph.mu.apply(d.alpha_apply(a_elem))
        rhs7 = t.slot_transform(0, d.alpha_apply)
        diff = lhs7 - rhs7
        report.add("mu-alpha compatibility", ANCHOR_THM44[7], f"generator {atom}",
                   not diff, None if not diff else diff)

        lhs8 = t.slot_transform(2, d.alpha_apply)
        rhs8 = t.slot_transform(1, lambda e: g * base.bracket(g_inv, e))
        diff = lhs8 - rhs8
        report.add("third-slot alpha law", ANCHOR_THM44[8], f"generator {atom}",
                   not diff, None if not diff else diff)

        t_ext = t.transport(trip)
        lhs10 = ph.mu.apply(d.delta_apply(a_elem)).transport(trip)
        term1 = t_ext.slot_transform(0, lambda e: to_ext(d.delta_apply(to_base(e))))
        term2 = (t_ext.slot_transform(0, lambda e: to_ext(g) * e)
                 .slot_transform(1, bracket_ginv_x))
        term3 = (t_ext.slot_transform(0, lambda e: to_ext(g) * e)
                 .slot_transform(1, lambda e: to_ext(g_inv) * e)
                 .slot_transform(2, lambda e: to_ext(d.delta_apply(to_base(e)))))
        diff = lhs10 - (term1 + term2 + term3)
        report.add("mu-delta compatibility", ANCHOR_THM44[10], f"generator {atom}",
                   not diff, None if not diff else diff)

    for s, t_atom in itertools.combinations(atoms, 2):
        es, et = pres.atom_element(s), pres.atom_element(t_atom)
        lhs9 = base.bracket(g_inv, et) * d.alpha_images[s]
        rhs9 = base.bracket(g_inv, es) * d.alpha_images[t_atom]
        diff = lhs9 - rhs9
        report.add("alpha cross law", ANCHOR_THM44[9], f"pair ({s},{t_atom})",
                   not diff, None if not diff else diff)

    if report.passed:
        extended = assemble_poisson_ore(d, ph, g)
        report.extend(check_poisson_hg(extended))
    return report


def assemble_poisson_ore(d: PoissonOreData, ph: PoissonHopfGaloisStructure,
                         g: Element) -> PoissonHopfGaloisStructure:
    """The extended Poisson Hopf-Galois structure on B[x]."""
    from .hopf_galois import MU_SIGNATURE

    glike = is_grouplike(ph.hopf_galois, g)
    if not glike:
        raise InputError(f"assemble_poisson_ore: g is not group-like ({glike.reason})")
    p_ext = build_poisson_ore(d)
    ext = p_ext.presentation
    g_t = transport_element(g, ext)
    gi_t = transport_element(glike.inverse, ext)
    x_el = ext.atom_element(d.variable)
    one = ext.one()
    mu_x = (TensorElement.outer([x_el, one, one], MU_SIGNATURE)
            - TensorElement.outer([g_t, gi_t * x_el, one], MU_SIGNATURE)
            + TensorElement.outer([g_t, gi_t, x_el], MU_SIGNATURE))
    images = {
        atom: img.transport((ext, ext, ext))
        for atom, img in ph.mu.images.items()
    }
    images[d.variable] = mu_x
    hg_ext = HopfGaloisStructure(ext, mu_map(ext, images))
    return PoissonHopfGaloisStructure(p_ext, hg_ext)
