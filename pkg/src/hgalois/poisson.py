"""Poisson brackets on presented commutative algebras.

The bracket is stored on unordered pairs of plain generators and extended
to everything else by bilinearity, antisymmetry and the Leibniz rule.
Brackets against a formal inverse are forced, never user data:

    {a, g^-1} = -g^-2 {a, g}

which follows from 0 = {a, g^-1 g}.  The module also provides the induced
brackets on tensor squares and on the twisted triple product (with its
negative middle term), and the compatibility checks tying a bracket to a
Hopf-Galois or Hopf structure.
"""

import itertools

from .errors import InputError
from .hopf_galois import (
    HopfGaloisStructure,
    HopfStructure,
    galois_to_hopf,
    hopf_to_galois,
    pushforward,
)
from .maps import GeneratorMap, check_map_respects_relations
from .presentations import Element
from .reports import VerificationReport
from .tensors import TensorElement

ANCHOR_POISSON = "Def 3.1 Poisson algebra"
ANCHOR_JACOBI = "Def 3.1 Jacobi identity"
ANCHOR_LEIBNIZ = "Def 3.1 Eq (3.1) Leibniz rule"
ANCHOR_TENSOR_BRACKET = "Remark 3.2 Eq (3.2)"
ANCHOR_TRIPLE_BRACKET = "Def 3.5 Eq (3.5)"
ANCHOR_POISSON_HG = "Def 3.5 Eq (3.4)"
ANCHOR_POISSON_HOPF = "Def 3.3 Eq (3.3)"
ANCHOR_COUNIT_BRACKET = "Lemma 3.4 counit kills brackets"
ANCHOR_ANTIPODE_BRACKET = "Lemma 3.4 antipode anti-respects brackets"
ANCHOR_POISSON_IDEAL = "Remark 3.6(1) Poisson ideal"
ANCHOR_PROP_37_1 = "Prop 3.7(1)"
ANCHOR_PROP_37_2 = "Prop 3.7(2)"


class PoissonStructure:
    def __init__(self, presentation, table: dict, *, check_commutative=True):
        """table maps pairs of plain generator atoms to Elements; pairs are
        canonicalized to (smaller, larger) with the sign flipped as needed."""
        self.presentation = presentation
        if check_commutative:
            bad = presentation.is_commutative_on_atoms()
            if bad:
                s, t = bad[0]
                raise InputError(
                    f"Poisson structures need a commutative algebra; "
                    f"{s} and {t} do not commute"
                )
        self.table: dict = {}
        for (a, b), value in table.items():
            for atom in (a, b):
                if presentation.atom_key(atom)[1]:
                    raise InputError(
                        f"bracket value for inverse atom {atom!r} is forced; "
                        f"supply brackets on plain generators only"
                    )
            if not isinstance(value, Element) or value.presentation is not presentation:
                raise InputError(f"bracket value for ({a},{b}) is not an element of the algebra")
            if a == b:
                if value:
                    raise InputError(f"bracket {{{a},{a}}} must vanish")
                continue
            if presentation.atom_key(a) > presentation.atom_key(b):
                a, b, value = b, a, -value
            if (a, b) in self.table and self.table[(a, b)] != value:
                raise InputError(f"conflicting bracket values for pair ({a},{b})")
            self.table[(a, b)] = presentation.normal_form(value)

    # ------------------------------------------------------------------
    def atom_bracket(self, s: str, t: str) -> Element:
        pres = self.presentation
        if s == t:
            return pres.zero()
        if pres.atom_key(s) > pres.atom_key(t):
            return -self.atom_bracket(t, s)
        # now s < t in atom order; an inverse atom sorts after its generator
        if pres.atom_key(t)[1]:
            base = t[:-3]
            inv_sq = pres.element({(t, t): pres.field.one})
            return pres.normal_form(-(inv_sq * self.atom_bracket(s, base)))
        if pres.atom_key(s)[1]:
            base = s[:-3]
            inv_sq = pres.element({(s, s): pres.field.one})
            return pres.normal_form(-(inv_sq * self.atom_bracket(base, t)))
        return self.table.get((s, t), pres.zero())

    def bracket(self, a: Element, b: Element) -> Element:
        """Bilinear, antisymmetric, Leibniz-in-each-argument extension."""
        pres = self.presentation
        for e in (a, b):
            if not isinstance(e, Element) or e.presentation is not pres:
                raise InputError("bracket: elements must belong to the Poisson algebra")
        out = pres.zero()
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                coeff = ca * cb
                for i in range(len(wa)):
                    rest_a = pres.element({wa[:i] + wa[i + 1:]: pres.field.one})
                    for j in range(len(wb)):
                        core = self.atom_bracket(wa[i], wb[j])
                        if not core:
                            continue
                        rest_b = pres.element({wb[:j] + wb[j + 1:]: pres.field.one})
                        out = out + (rest_a * core * rest_b).scale(coeff)
        return out

    def atoms(self):
        return list(self.presentation.atoms)

    def __repr__(self):
        entries = ", ".join(
            f"{{{a},{b}}}={v}" for (a, b), v in sorted(self.table.items())
        )
        return f"PoissonStructure({self.presentation!r}; {entries or 'zero bracket'})"


def check_poisson(p: PoissonStructure) -> VerificationReport:
    """Commutativity, antisymmetry of the extended bracket, and the Jacobi
    identity on all generator triples (inverse atoms included)."""
    pres = p.presentation
    report = VerificationReport()
    bad = pres.is_commutative_on_atoms()
    report.add("commutative presentation", ANCHOR_POISSON, "all atom pairs",
               not bad, None if not bad else f"{bad[0][0]} and {bad[0][1]} do not commute")
    atoms = p.atoms()
    elems = {a: pres.atom_element(a) for a in atoms}
    for s, t in itertools.combinations(atoms, 2):
        anti = p.bracket(elems[s], elems[t]) + p.bracket(elems[t], elems[s])
        report.add("antisymmetry", ANCHOR_POISSON, f"pair ({s},{t})",
                   not anti, None if not anti else anti)
    for s, t, u in itertools.combinations_with_replacement(atoms, 3):
        a, b, c = elems[s], elems[t], elems[u]
        jac = (p.bracket(a, p.bracket(b, c))
               + p.bracket(b, p.bracket(c, a))
               + p.bracket(c, p.bracket(a, b)))
        report.add("Jacobi identity", ANCHOR_JACOBI, f"triple ({s},{t},{u})",
                   not jac, None if not jac else jac)
    return report


def tensor_bracket(p_left: PoissonStructure, p_right: PoissonStructure,
                   t1: TensorElement, t2: TensorElement) -> TensorElement:
    """Bracket on A ⊗ B:  {a⊗b, a'⊗b'} = aa' ⊗ {b,b'} + {a,a'} ⊗ bb'."""
    if t1.rank != 2 or t2.rank != 2:
        raise InputError("tensor_bracket needs rank-2 tensors")
    pa, pb = p_left.presentation, p_right.presentation
    if t1.factors != (pa, pb) or t2.factors != (pa, pb):
        raise InputError("tensor factors do not match the Poisson presentations")
    out = TensorElement.zero(t1.factors, t1.signature, t1.field)
    for (a, b), c1 in t1.terms.items():
        ea, eb = pa.element({a: pa.field.one}), pb.element({b: pb.field.one})
        for (a2, b2), c2 in t2.terms.items():
            ea2, eb2 = pa.element({a2: pa.field.one}), pb.element({b2: pb.field.one})
            coeff = c1 * c2
            out = out + TensorElement.outer(
                [ea * ea2, p_right.bracket(eb, eb2)], t1.signature).scale(coeff)
            out = out + TensorElement.outer(
                [p_left.bracket(ea, ea2), eb * eb2], t1.signature).scale(coeff)
    return out


def triple_bracket(p: PoissonStructure, s: TensorElement, t: TensorElement) -> TensorElement:
    """Bracket on R ⊗ R^op ⊗ R with the signed middle term:

    {x⊗y⊗z, x'⊗y'⊗z'} = {x,x'}⊗yy'⊗zz' - xx'⊗{y,y'}⊗zz' + xx'⊗yy'⊗{z,z'}.
    """
    pres = p.presentation
    if s.rank != 3 or t.rank != 3:
        raise InputError("triple_bracket needs rank-3 tensors")
    if any(f is not pres for f in s.factors + t.factors):
        raise InputError("tensor factors do not match the Poisson presentation")
    if s.signature != t.signature:
        raise InputError("tensor signature mismatch")
    one = pres.field.one
    out = TensorElement.zero(s.factors, s.signature, s.field)
    for (x, y, z), c1 in s.terms.items():
        ex, ey, ez = (pres.element({w: one}) for w in (x, y, z))
        for (x2, y2, z2), c2 in t.terms.items():
            ex2, ey2, ez2 = (pres.element({w: one}) for w in (x2, y2, z2))
            coeff = c1 * c2
            xx, yy, zz = ex * ex2, ey * ey2, ez * ez2
            out = out + TensorElement.outer(
                [p.bracket(ex, ex2), yy, zz], s.signature).scale(coeff)
            out = out - TensorElement.outer(
                [xx, p.bracket(ey, ey2), zz], s.signature).scale(coeff)
            out = out + TensorElement.outer(
                [xx, yy, p.bracket(ez, ez2)], s.signature).scale(coeff)
    return out


# ----------------------------------------------------------------------
# combined structures

class PoissonHopfGaloisStructure:
    def __init__(self, poisson: PoissonStructure, hopf_galois: HopfGaloisStructure):
        if poisson.presentation is not hopf_galois.presentation:
            raise InputError("Poisson and Hopf-Galois structures live on different algebras")
        self.poisson = poisson
        self.hopf_galois = hopf_galois
        self.presentation = poisson.presentation

    @property
    def mu(self):
        return self.hopf_galois.mu


class PoissonHopfStructure:
    def __init__(self, poisson: PoissonStructure, hopf: HopfStructure):
        if poisson.presentation is not hopf.presentation:
            raise InputError("Poisson and Hopf structures live on different algebras")
        self.poisson = poisson
        self.hopf = hopf
        self.presentation = poisson.presentation


def check_poisson_hg(ph: PoissonHopfGaloisStructure) -> VerificationReport:
    """mu({a,b}) = {mu(a), mu(b)} for every unordered generator pair, the
    right side taken with the signed triple-tensor bracket."""
    pres = ph.presentation
    p = ph.poisson
    report = VerificationReport()
    atoms = p.atoms()
    for s, t in itertools.combinations(atoms, 2):
        es, et = pres.atom_element(s), pres.atom_element(t)
        lhs = ph.mu.apply(p.bracket(es, et))
        rhs = triple_bracket(p, ph.mu.apply(es), ph.mu.apply(et))
        diff = lhs - rhs
        report.add("mu is a Poisson map", ANCHOR_POISSON_HG, f"pair ({s},{t})",
                   not diff, None if not diff else diff)
    return report


def check_poisson_hopf(ph: PoissonHopfStructure) -> VerificationReport:
    """Per generator pair: Delta({a,b}) = {Delta a, Delta b} on the tensor
    square, the counit kills brackets, and the antipode anti-respects them."""
    pres = ph.presentation
    p, hs = ph.poisson, ph.hopf
    report = VerificationReport()
    for s, t in itertools.combinations(p.atoms(), 2):
        es, et = pres.atom_element(s), pres.atom_element(t)
        br = p.bracket(es, et)

        lhs = hs.delta.apply(br)
        rhs = tensor_bracket(p, p, hs.delta.apply(es), hs.delta.apply(et))
        diff = lhs - rhs
        report.add("Delta is a Poisson map", ANCHOR_POISSON_HOPF, f"pair ({s},{t})",
                   not diff, None if not diff else diff)

        eps = hs.counit.apply_scalar(br)
        report.add("counit kills bracket", ANCHOR_COUNIT_BRACKET, f"pair ({s},{t})",
                   not eps, None if not eps else pres.scalar(eps))

        s_lhs = hs.antipode.apply_element(br)
        s_rhs = p.bracket(hs.antipode.apply_element(et), hs.antipode.apply_element(es))
        diff = s_lhs - s_rhs
        report.add("antipode anti-respects bracket", ANCHOR_ANTIPODE_BRACKET,
                   f"pair ({s},{t})", not diff, None if not diff else diff)
    return report


def phg_from_poisson_hopf(ph: PoissonHopfStructure) -> PoissonHopfGaloisStructure:
    """The structure map built from the comultiplication and antipode makes
    a Poisson Hopf structure into a Poisson Hopf-Galois structure."""
    return PoissonHopfGaloisStructure(ph.poisson, hopf_to_galois(ph.hopf))


def poisson_hopf_from_phg(ph: PoissonHopfGaloisStructure, alpha: GeneratorMap) -> PoissonHopfStructure:
    """Needs an algebra map alpha: R -> k whose kernel contains all brackets."""
    pres = ph.presentation
    p = ph.poisson
    if alpha.source is not pres or alpha.rank != 0:
        raise InputError("alpha must be a scalar-valued map on the algebra")
    alpha_report = check_map_respects_relations(alpha, anchor=ANCHOR_PROP_37_1)
    if not alpha_report.passed:
        bad = alpha_report.failures()[0]
        raise InputError(f"alpha is not an algebra map; fails on {bad.subject}")
    for s, t in itertools.combinations(p.atoms(), 2):
        value = alpha.apply_scalar(p.bracket(pres.atom_element(s), pres.atom_element(t)))
        if value:
            raise InputError(
                f"alpha does not kill the bracket of pair ({s},{t}); "
                f"alpha({{{s},{t}}}) = {value}"
            )
    return PoissonHopfStructure(p, galois_to_hopf(ph.hopf_galois, alpha))


def poisson_pushforward(ph: PoissonHopfGaloisStructure, f: GeneratorMap,
                        section: dict, ideal_generators) -> PoissonHopfGaloisStructure:
    """Quotient by a Poisson ideal: both the bracket and the structure map
    descend.  The ideal generators are checked against every algebra
    generator: each bracket must map to zero in the quotient."""
    pres = ph.presentation
    p = ph.poisson
    for u in ideal_generators:
        if not isinstance(u, Element) or u.presentation is not pres:
            raise InputError("ideal generators must be elements of the source algebra")
        if f.apply_element(u):
            raise InputError(f"ideal generator {u} does not map to zero under f")
        for atom in p.atoms():
            br = p.bracket(pres.atom_element(atom), u)
            if f.apply_element(br):
                raise InputError(
                    f"not a Poisson ideal: {{{atom}, {u}}} = {br} does not lie in "
                    f"the ideal (pair ({atom}, ideal generator))"
                )
    hg_b = pushforward(ph.hopf_galois, f, section)
    target = f.targets[0]
    table = {}
    for s, t in itertools.combinations([g.name for g in target.generators], 2):
        if s not in section or t not in section:
            raise InputError(f"section does not cover generators {s!r}, {t!r}")
        table[(s, t)] = f.apply_element(p.bracket(section[s], section[t]))
    p_b = PoissonStructure(target, table)
    return PoissonHopfGaloisStructure(p_b, hg_b)
