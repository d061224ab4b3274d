"""Finitely presented associative algebras with a rewriting normal form.

A presentation consists of an ordered list of generators (each optionally
invertible, which adds a formal inverse atom and the two cancellation
rules) and a set of oriented rewrite rules  word -> element.  Words are
tuples of atom names; an atom is a generator name or ``name^-1``.  Rules
must strictly decrease the degree-lexicographic order induced by the
generator order, which makes every reduction terminate; uniqueness of
normal forms is a separate, checkable property (`unresolved_critical_pairs`).

Invertible generators therefore normalize to signed powers: in k[g,g^-1]
the normal forms are exactly g^m with m in Z.
"""

import itertools

from .errors import ConfluenceError, DegreeCapError, InputError

Word = tuple[str, ...]

DEFAULT_CAP = 12
MAX_BASIS_SIZE = 1024


def inverse_atom(name: str) -> str:
    return name[:-3] if name.endswith("^-1") else name + "^-1"


def word_str(word: Word) -> str:
    """Compressed human-readable form, e.g. ('g','g','x') -> 'g^2*x'."""
    if not word:
        return "1"
    parts = []
    for atom, run in itertools.groupby(word):
        n = len(list(run))
        if atom.endswith("^-1"):
            base, exp = atom[:-3], -n
        else:
            base, exp = atom, n
        parts.append(base if exp == 1 else f"{base}^{exp}")
    return "*".join(parts)


def word_to_tokens(word: Word) -> list[str]:
    """Run-length encoded token list used in witness serialization."""
    if not word:
        return []
    tokens = []
    for atom, run in itertools.groupby(word):
        n = len(list(run))
        if atom.endswith("^-1"):
            base, exp = atom[:-3], -n
        else:
            base, exp = atom, n
        tokens.append(base if exp == 1 else f"{base}^{exp}")
    return tokens


class GeneratorSymbol:
    """A named generator; invertible ones carry a formal inverse atom."""

    __slots__ = ("name", "invertible")

    def __init__(self, name: str, invertible: bool = False):
        if not name or "^" in name or "*" in name or " " in name:
            raise InputError(f"invalid generator name {name!r}")
        self.name = name
        self.invertible = invertible

    def __repr__(self):
        return f"GeneratorSymbol({self.name!r}{', invertible' if self.invertible else ''})"


class RewriteRule:
    """An oriented rule  lhs (word) -> rhs (element of the presentation)."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Word, rhs: "Element"):
        self.lhs = tuple(lhs)
        self.rhs = rhs

    def __repr__(self):
        return f"{word_str(self.lhs)} -> {self.rhs}"


class Element:
    """Sparse element of a presented algebra: normal-form words -> coefficients."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation, terms: dict):
        self.presentation = presentation
        self.terms = terms

    def _check_same(self, other):
        if self.presentation is not other.presentation:
            raise InputError("elements belong to different presentations")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, self.presentation.field.zero) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return Element(self.presentation, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.presentation, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check_same(other)
            return self.presentation.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        if not scalar:
            return Element(self.presentation, {})
        return Element(self.presentation, {w: c * scalar for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.presentation is other.presentation and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash((id(self.presentation), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        key = self.presentation.word_key
        return sorted(self.terms.items(), key=lambda item: key(item[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"({c})*{word_str(w)}" if w else f"({c})")
        return " + ".join(parts)


class AlgebraPresentation:
    """A finitely presented algebra with a terminating rewriting system.

    Parameters
    ----------
    field : coefficient field (`QQ` or `GF(p)`)
    generators : ordered list of `GeneratorSymbol`
    relations : list of (lhs word, rhs element-data) pairs; rhs may be given
        as a dict word->coeff or as an `Element` once construction is done
        (builders use `add_rule_data`).
    commutative : if set, commutation rules  t*s -> s*t  are added for every
        pair of distinct-generator atoms with t > s.
    cap : degree cap; any word longer than this aborts with `DegreeCapError`.
    check : verify local confluence of the finished rule set at construction.
    """

    def __init__(self, field, generators, relations=(), *, commutative=False,
                 cap=DEFAULT_CAP, check=True, name=""):
        self.field = field
        self.name = name
        self.cap = cap
        self.commutative = commutative
        self.generators = list(generators)
        seen = set()
        for g in self.generators:
            if g.name in seen:
                raise InputError(f"duplicate generator name {g.name!r}")
            seen.add(g.name)

        self._atom_index: dict[str, tuple[int, int]] = {}
        atoms = []
        for i, g in enumerate(self.generators):
            self._atom_index[g.name] = (i, 0)
            atoms.append(g.name)
            if g.invertible:
                inv = inverse_atom(g.name)
                self._atom_index[inv] = (i, 1)
                atoms.append(inv)
        self.atoms: list[str] = atoms

        self.rules: list[RewriteRule] = []
        self.user_relations: list[tuple[Word, dict]] = []
        self._rules_by_first: dict[str, list[RewriteRule]] = {}
        self._basis_cache = None
        self._table_cache = None
        self._nf_cache: dict[Word, dict] = {}

        for g in self.generators:
            if g.invertible:
                inv = inverse_atom(g.name)
                self._add_rule((g.name, inv), {(): field.one})
                self._add_rule((inv, g.name), {(): field.one})
        if commutative:
            for s, t in itertools.combinations(self.atoms, 2):
                if self.generator_of(s) is self.generator_of(t):
                    continue  # cancellation already orients same-generator pairs
                self._add_rule((t, s), {(s, t): field.one})
        for lhs, rhs in relations:
            self.add_rule_data(lhs, rhs)

        if check:
            pairs = self.unresolved_critical_pairs()
            if pairs:
                word, r1, r2, _ = pairs[0]
                raise ConfluenceError(
                    f"presentation {name or '<anonymous>'} is not locally confluent; "
                    f"first unresolved overlap: {word_str(word)} "
                    f"between [{r1}] and [{r2}]"
                )

    # ------------------------------------------------------------------
    # atoms and ordering

    def generator_of(self, atom: str) -> GeneratorSymbol:
        try:
            idx, _ = self._atom_index[atom]
        except KeyError:
            raise InputError(f"unknown atom {atom!r} in presentation {self.name or '<anonymous>'}")
        return self.generators[idx]

    def atom_key(self, atom: str):
        try:
            return self._atom_index[atom]
        except KeyError:
            raise InputError(f"unknown atom {atom!r} in presentation {self.name or '<anonymous>'}")

    def word_key(self, word: Word):
        return (len(word), tuple(self.atom_key(a) for a in word))

    def validate_word(self, word) -> Word:
        word = tuple(word)
        for a in word:
            self.atom_key(a)
        return word

    # ------------------------------------------------------------------
    # rules

    def _add_rule(self, lhs: Word, rhs_terms: dict):
        lhs = self.validate_word(lhs)
        if not lhs:
            raise InputError("rewrite rule with empty left-hand side")
        rhs = Element(self, dict(rhs_terms))
        lk = self.word_key(lhs)
        for w in rhs.terms:
            self.validate_word(w)
            if self.word_key(w) >= lk:
                raise InputError(
                    f"rule {word_str(lhs)} -> {rhs} does not decrease the "
                    f"degree-lexicographic order (offending term {word_str(w)}); "
                    f"reorder generators or reorient the relation"
                )
        rule = RewriteRule(lhs, rhs)
        self.rules.append(rule)
        self._rules_by_first.setdefault(lhs[0], []).append(rule)
        self._basis_cache = None
        self._table_cache = None
        self._nf_cache = {}
        return rule

    def add_rule_data(self, lhs, rhs):
        """Add a rule; rhs is a dict {word: coeff} with already-exact coefficients."""
        if isinstance(rhs, Element):
            rhs = rhs.terms
        terms = {tuple(w): c for w, c in rhs.items()}
        rule = self._add_rule(tuple(lhs), terms)
        self.user_relations.append((rule.lhs, terms))
        return rule

    # ------------------------------------------------------------------
    # reduction

    def _find_redex(self, word: Word):
        for pos in range(len(word)):
            for rule in self._rules_by_first.get(word[pos], ()):
                n = len(rule.lhs)
                if word[pos:pos + n] == rule.lhs:
                    return pos, rule
        return None

    def reduce_terms(self, terms: dict, *, cap=None, operation="normal_form") -> dict:
        """Fully reduce a {word: coeff} map.

        Rules never increase word length, so the cap only needs checking on
        entry of each pending word.  Single-word normal forms are memoized
        (the result of a terminating reduction does not depend on the cap).
        """
        cap = self.cap if cap is None else cap
        out: dict = {}
        for w, c in terms.items():
            if not c:
                continue
            for nf_word, nf_coeff in self._word_nf(tuple(w), cap, operation).items():
                s = out.get(nf_word, self.field.zero) + c * nf_coeff
                if s:
                    out[nf_word] = s
                else:
                    out.pop(nf_word, None)
        return out

    def _word_nf(self, word: Word, cap, operation) -> dict:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        out: dict = {}
        stack = [(word, self.field.one)]
        while stack:
            w, coeff = stack.pop()
            if len(w) > cap:
                raise DegreeCapError(operation, len(w), cap)
            cached = self._nf_cache.get(w)
            if cached is not None:
                for nf_word, nf_coeff in cached.items():
                    s = out.get(nf_word, self.field.zero) + coeff * nf_coeff
                    if s:
                        out[nf_word] = s
                    else:
                        out.pop(nf_word, None)
                continue
            hit = self._find_redex(w)
            if hit is None:
                s = out.get(w, self.field.zero) + coeff
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
            else:
                pos, rule = hit
                head, tail = w[:pos], w[pos + len(rule.lhs):]
                for rw, rc in rule.rhs.terms.items():
                    stack.append((head + rw + tail, coeff * rc))
        self._nf_cache[word] = out
        return out

    def normal_form(self, value, *, cap=None, operation="normal_form") -> Element:
        if isinstance(value, Element):
            if value.presentation is not self:
                raise InputError("element belongs to a different presentation")
            terms = value.terms
        else:
            terms = {self.validate_word(value): self.field.one}
        return Element(self, self.reduce_terms(terms, cap=cap, operation=operation))

    def multiply(self, a: Element, b: Element, *, cap=None) -> Element:
        if a.presentation is not self or b.presentation is not self:
            raise InputError("multiply: elements from different presentations")
        raw: dict = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                w = wa + wb
                c = ca * cb
                s = raw.get(w, self.field.zero) + c
                if s:
                    raw[w] = s
                else:
                    raw.pop(w, None)
        return Element(self, self.reduce_terms(raw, cap=cap, operation="multiply"))

    # ------------------------------------------------------------------
    # element constructors

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {(): self.field.one})

    def atom_element(self, atom: str) -> Element:
        word = self.validate_word((atom,))
        return self.normal_form(word)

    def element(self, terms: dict) -> Element:
        """Normalize a {word-tuple: coeff} map into an Element."""
        raw = {}
        for w, c in terms.items():
            w = self.validate_word(w)
            if c:
                raw[w] = raw.get(w, self.field.zero) + c
        return Element(self, self.reduce_terms(raw))

    def scalar(self, c) -> Element:
        return Element(self, {(): c} if c else {})

    # ------------------------------------------------------------------
    # local confluence

    def unresolved_critical_pairs(self, *, max_overlap=None):
        """All critical pairs whose two one-step reducts have different normal
        forms, as (overlap word, rule1, rule2, nonzero difference) tuples.

        Overlaps considered: proper suffix/prefix overlaps of two rule
        left-hand sides and full containment of one lhs in another, i.e.
        words of length at most len(l1)+len(l2)-1.
        """
        if max_overlap is None:
            max_lhs = max((len(r.lhs) for r in self.rules), default=0)
            max_overlap = min(2 * max_lhs, self.cap)
        bad = []

        def compare(word, pos1, r1, pos2, r2):
            a = self.reduce_terms(self._one_step(word, pos1, r1))
            b = self.reduce_terms(self._one_step(word, pos2, r2))
            if a != b:
                diff = dict(a)
                for w, c in b.items():
                    s = diff.get(w, self.field.zero) - c
                    if s:
                        diff[w] = s
                    else:
                        diff.pop(w, None)
                bad.append((word, r1, r2, diff))

        for r1, r2 in itertools.product(self.rules, repeat=2):
            l1, l2 = r1.lhs, r2.lhs
            # suffix of l1 == prefix of l2 (length k), overlap word l1 + l2[k:];
            # k = len covers prefix/suffix containments of the shorter lhs
            for k in range(1, min(len(l1), len(l2)) + 1):
                if r1 is r2 and k == len(l1):
                    continue
                if l1[len(l1) - k:] == l2[:k]:
                    word = l1 + l2[k:]
                    if len(word) <= max_overlap:
                        compare(word, 0, r1, len(l1) - k, r2)
            # l2 strictly inside l1
            if len(l2) < len(l1):
                for pos in range(1, len(l1) - len(l2)):
                    if l1[pos:pos + len(l2)] == l2:
                        compare(l1, 0, r1, pos, r2)
        return bad

    def complete_rules(self, *, max_new_rules=500, max_overlap=None):
        """Bounded completion: orient each unresolved critical-pair difference
        by its leading monomial and add it as a rule, until locally confluent.

        Every added rule is a consequence of the existing ones (the
        difference of two reductions of one word), so the presented algebra
        is unchanged.  Terminates because rules never increase word length
        and there are finitely many words below the cap.
        """
        added = 0
        while True:
            pairs = self.unresolved_critical_pairs(max_overlap=max_overlap)
            if not pairs:
                return added
            _, _, _, diff = pairs[0]
            lead = max(diff, key=self.word_key)
            lead_coeff = diff[lead]
            rhs = {w: -(c / lead_coeff) for w, c in diff.items() if w != lead}
            self._add_rule(lead, rhs)
            added += 1
            if added > max_new_rules:
                word, r1, r2, _ = pairs[0]
                raise ConfluenceError(
                    f"completion did not stabilize after {max_new_rules} rules; "
                    f"last unresolved overlap: {word_str(word)}"
                )

    def _one_step(self, word: Word, pos: int, rule: RewriteRule) -> dict:
        head, tail = word[:pos], word[pos + len(rule.lhs):]
        return {head + rw + tail: rc for rw, rc in rule.rhs.terms.items()}

    # ------------------------------------------------------------------
    # finite basis and linear algebra

    def finite_basis(self, *, max_size=MAX_BASIS_SIZE):
        """Normal-form words reachable from 1 by right multiplication.

        Returns the sorted word list when the closure stabilizes, or None
        when it keeps producing new words (infinite-dimensional at this cap).
        """
        if self._basis_cache is not None:
            return self._basis_cache
        seen = {()}
        queue = [()]
        while queue:
            word = queue.pop(0)
            for atom in self.atoms:
                candidate = word + (atom,)
                if len(candidate) > self.cap:
                    return None
                try:
                    reduced = self.reduce_terms({candidate: self.field.one})
                except DegreeCapError:
                    return None
                for w in reduced:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
                        if len(seen) > max_size:
                            return None
        self._basis_cache = sorted(seen, key=self.word_key)
        return self._basis_cache

    def basis_index(self) -> dict:
        basis = self.finite_basis()
        if basis is None:
            raise InputError(
                f"presentation {self.name or '<anonymous>'} has no finite basis at cap {self.cap}"
            )
        return {w: i for i, w in enumerate(basis)}

    def coeff_vector(self, element: Element, index=None) -> dict:
        index = index or self.basis_index()
        vec = {}
        for w, c in element.terms.items():
            if w not in index:
                raise InputError(f"word {word_str(w)} is not a basis word")
            vec[index[w]] = c
        return vec

    def multiplication_table(self):
        """Structure constants: (i, j) -> {k: c} with b_i * b_j = sum c * b_k."""
        if self._table_cache is not None:
            return self._table_cache
        basis = self.finite_basis()
        if basis is None:
            raise InputError("multiplication table requires a finite basis")
        index = {w: i for i, w in enumerate(basis)}
        table = {}
        for i, wi in enumerate(basis):
            for j, wj in enumerate(basis):
                prod = self.reduce_terms({wi + wj: self.field.one})
                table[(i, j)] = {index[w]: c for w, c in prod.items()}
        self._table_cache = table
        return table

    def invert(self, element: Element):
        """Two-sided inverse of an element, or None.

        Single words in invertible atoms invert syntactically; otherwise a
        finite basis is required and  element * y = 1  is solved exactly,
        then verified on the other side.
        """
        if element.presentation is not self:
            raise InputError("invert: element from a different presentation")
        if len(element.terms) == 1:
            word, coeff = next(iter(element.terms.items()))
            if all(self.generator_of(a).invertible for a in word):
                inv_word = tuple(inverse_atom(a) for a in reversed(word))
                return self.normal_form(Element(self, {inv_word: self.field.one / coeff}))
        basis = self.finite_basis()
        if basis is None:
            return None
        index = {w: i for i, w in enumerate(basis)}
        n = len(basis)
        # column v: coordinates of element * basis[v]
        cols = []
        for v in range(n):
            prod = self.multiply(element, Element(self, {basis[v]: self.field.one}))
            cols.append(self.coeff_vector(prod, index))
        rhs = {index[()]: self.field.one}
        solution = _solve_columns(self.field, n, cols, rhs)
        if solution is None:
            return None
        candidate = Element(self, {basis[v]: c for v, c in solution.items() if c})
        if self.multiply(candidate, element) != self.one():
            return None
        if self.multiply(element, candidate) != self.one():
            return None
        return candidate

    def is_commutative_on_atoms(self):
        """Pairs of atoms whose products differ; empty list means commutative."""
        bad = []
        for s, t in itertools.combinations(self.atoms, 2):
            st = self.reduce_terms({(s, t): self.field.one})
            ts = self.reduce_terms({(t, s): self.field.one})
            if st != ts:
                bad.append((s, t))
        return bad

    def __repr__(self):
        gens = ",".join(g.name + ("^±1" if g.invertible else "") for g in self.generators)
        return f"AlgebraPresentation({self.name or gens}; {len(self.rules)} rules)"


def transport_element(element: Element, presentation: AlgebraPresentation) -> Element:
    """Reinterpret an element over another presentation sharing its atoms."""
    return presentation.normal_form(Element(presentation, dict(element.terms)))


def _solve_columns(field, n, cols, rhs):
    """Solve sum_v x_v * cols[v] = rhs by exact Gaussian elimination.

    cols and rhs are sparse {row: coeff} maps; returns {v: x_v} or None.
    """
    dense = [[cols[v].get(r, field.zero) for v in range(n)] for r in range(n)]
    vec = [rhs.get(r, field.zero) for r in range(n)]
    row = 0
    pivots = []
    for col in range(n):
        pivot_row = next((r for r in range(row, n) if dense[r][col]), None)
        if pivot_row is None:
            continue
        dense[row], dense[pivot_row] = dense[pivot_row], dense[row]
        vec[row], vec[pivot_row] = vec[pivot_row], vec[row]
        pv = dense[row][col]
        dense[row] = [x / pv for x in dense[row]]
        vec[row] = vec[row] / pv
        for r in range(n):
            if r != row and dense[r][col]:
                factor = dense[r][col]
                dense[r] = [a - factor * b for a, b in zip(dense[r], dense[row])]
                vec[r] = vec[r] - factor * vec[row]
        pivots.append((row, col))
        row += 1
        if row == n:
            break
    solution = {}
    for r, c in pivots:
        solution[c] = vec[r]
    # consistency: rows without pivot must have zero rhs
    pivot_rows = {r for r, _ in pivots}
    for r in range(n):
        if r not in pivot_rows and vec[r]:
            return None
    # verify (columns outside pivot set were treated as free = 0)
    check = [field.zero] * n
    for v, x in solution.items():
        if not x:
            continue
        for r, c in cols[v].items():
            check[r] = check[r] + x * c
    target = [rhs.get(r, field.zero) for r in range(n)]
    if check != target:
        return None
    return solution
