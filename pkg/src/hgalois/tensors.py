"""Sparse twisted tensor products of presented algebras.

A `TensorElement` of rank k stores terms as k-tuples of normal-form words.
Each slot carries a twist flag; flagged slots multiply in the opposite
order, so for signature (plain, op, plain):

    (x ⊗ y ⊗ z) * (x' ⊗ y' ⊗ z')  =  x x' ⊗ y' y ⊗ z z'.

Folds always use the plain product of the underlying algebra in written
order: they realize the multiplication maps applied to adjacent slots,
which act on elements of the algebra itself, not of its opposite.
"""

import itertools

from .errors import InputError
from .presentations import Element, word_str

PLAIN = False
OP = True


class TensorElement:
    __slots__ = ("factors", "signature", "terms", "field")

    def __init__(self, factors, signature, terms, field=None, *, normalize=True):
        self.factors = tuple(factors)
        self.signature = tuple(bool(s) for s in signature)
        if len(self.factors) != len(self.signature):
            raise InputError("tensor signature length differs from factor count")
        if field is None:
            if not self.factors:
                raise InputError("rank-0 tensor needs an explicit field")
            field = self.factors[0].field
        self.field = field
        for p in self.factors:
            if p.field != field:
                raise InputError("tensor factors over different fields")
        self.terms = self._normalize(terms) if normalize else dict(terms)

    # ------------------------------------------------------------------
    def _normalize(self, raw) -> dict:
        out: dict = {}
        for key, coeff in raw.items():
            if not coeff:
                continue
            key = tuple(tuple(w) for w in key)
            if len(key) != len(self.factors):
                raise InputError("tensor term rank differs from factor count")
            reduced = [self.factors[i].reduce_terms({key[i]: self.field.one})
                       for i in range(len(key))]
            for combo in itertools.product(*(r.items() for r in reduced)):
                words = tuple(w for w, _ in combo)
                c = coeff
                for _, f in combo:
                    c = c * f
                if not c:
                    continue
                s = out.get(words, self.field.zero) + c
                if s:
                    out[words] = s
                else:
                    out.pop(words, None)
        return out

    @classmethod
    def unit(cls, factors, signature, field=None):
        factors = tuple(factors)
        if field is None and factors:
            field = factors[0].field
        empty = tuple(() for _ in factors)
        return cls(factors, signature, {empty: field.one}, field, normalize=False)

    @classmethod
    def zero(cls, factors, signature, field=None):
        return cls(factors, signature, {}, field, normalize=False)

    @classmethod
    def outer(cls, elements, signature):
        """Pure tensor e_1 ⊗ ... ⊗ e_k of algebra elements."""
        elements = list(elements)
        factors = tuple(e.presentation for e in elements)
        field = factors[0].field if factors else None
        terms: dict = {}
        for combo in itertools.product(*(e.terms.items() for e in elements)):
            words = tuple(w for w, _ in combo)
            c = field.one
            for _, f in combo:
                c = c * f
            if c:
                terms[words] = terms.get(words, field.zero) + c
        return cls(factors, signature, terms, field, normalize=False)

    @classmethod
    def scalar_value(cls, field, value):
        return cls((), (), {(): value} if value else {}, field, normalize=False)

    # ------------------------------------------------------------------
    def _check_shape(self, other):
        if len(self.factors) != len(other.factors) or any(
            a is not b for a, b in zip(self.factors, other.factors)
        ):
            raise InputError("tensor factors over different presentations")
        if self.signature != other.signature:
            raise InputError("tensor signature mismatch")

    @property
    def rank(self):
        return len(self.factors)

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check_shape(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, self.field.zero) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return TensorElement(self.factors, self.signature, terms, self.field, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(self.factors, self.signature,
                             {k: -c for k, c in self.terms.items()},
                             self.field, normalize=False)

    def scale(self, scalar):
        if not scalar:
            return TensorElement.zero(self.factors, self.signature, self.field)
        return TensorElement(self.factors, self.signature,
                             {k: c * scalar for k, c in self.terms.items()},
                             self.field, normalize=False)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __mul__(self, other):
        """Slot-wise product; op slots reverse the operand order."""
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check_shape(other)
        raw: dict = {}
        for ks, cs in self.terms.items():
            for kt, ct in other.terms.items():
                words = tuple(
                    kt[i] + ks[i] if self.signature[i] else ks[i] + kt[i]
                    for i in range(self.rank)
                )
                c = cs * ct
                s = raw.get(words, self.field.zero) + c
                if s:
                    raw[words] = s
                else:
                    raw.pop(words, None)
        return TensorElement(self.factors, self.signature, raw, self.field)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (all(a is b for a, b in zip(self.factors, other.factors))
                and len(self.factors) == len(other.factors)
                and self.signature == other.signature
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------
    def slot_transform(self, i, func):
        """Apply a linear map Element -> Element to slot i of every term."""
        pres = self.factors[i]
        raw: dict = {}
        for key, coeff in self.terms.items():
            image = func(Element(pres, {key[i]: pres.field.one}))
            for w, c in image.terms.items():
                new_key = key[:i] + (w,) + key[i + 1:]
                s = raw.get(new_key, self.field.zero) + coeff * c
                if s:
                    raw[new_key] = s
                else:
                    raw.pop(new_key, None)
        return TensorElement(self.factors, self.signature, raw, self.field)

    def expand_slot(self, i, gmap):
        """Replace slot i by the image tensor of a generator map.

        For a rank-1 map the slot keeps its own twist flag (the map just
        substitutes elements of the same underlying space).  For other
        ranks the map's full signature is spliced in; this is only
        meaningful on plain slots and is rejected on twisted ones.
        """
        sub_rank = len(gmap.targets)
        if sub_rank == 1:
            new_sig = self.signature
            new_factors = self.factors[:i] + (gmap.targets[0],) + self.factors[i + 1:]
        else:
            if self.signature[i]:
                raise InputError("cannot splice a multi-slot map into a twisted slot")
            new_sig = self.signature[:i] + gmap.signature + self.signature[i + 1:]
            new_factors = self.factors[:i] + gmap.targets + self.factors[i + 1:]
        raw: dict = {}
        for key, coeff in self.terms.items():
            image = gmap.apply_word(key[i])
            for sub_key, c in image.terms.items():
                new_key = key[:i] + sub_key + key[i + 1:]
                s = raw.get(new_key, self.field.zero) + coeff * c
                if s:
                    raw[new_key] = s
                else:
                    raw.pop(new_key, None)
        return TensorElement(new_factors, new_sig, raw, self.field)

    def fold_adjacent(self, i):
        """Multiply slots i and i+1 in the plain algebra product; the merged
        slot is plain in the result."""
        if not 0 <= i < self.rank - 1:
            raise InputError("fold_adjacent: slot out of range")
        if self.factors[i] is not self.factors[i + 1]:
            raise InputError("fold_adjacent: slots over different presentations")
        new_factors = self.factors[:i] + self.factors[i + 1:]
        new_sig = self.signature[:i] + (PLAIN,) + self.signature[i + 2:]
        raw: dict = {}
        for key, coeff in self.terms.items():
            new_key = key[:i] + (key[i] + key[i + 1],) + key[i + 2:]
            s = raw.get(new_key, self.field.zero) + coeff
            if s:
                raw[new_key] = s
            else:
                raw.pop(new_key, None)
        return TensorElement(new_factors, new_sig, raw, self.field)

    def fold_all(self) -> Element:
        """Multiply all slots left to right in the plain product of the
        (shared) underlying algebra."""
        if self.rank == 0:
            raise InputError("fold_all needs rank >= 1")
        pres = self.factors[0]
        for p in self.factors:
            if p is not pres:
                raise InputError("fold_all: slots over different presentations")
        raw: dict = {}
        for key, coeff in self.terms.items():
            word = tuple(a for w in key for a in w)
            s = raw.get(word, self.field.zero) + coeff
            if s:
                raw[word] = s
            else:
                raw.pop(word, None)
        return pres.normal_form(Element(pres, raw))

    def reversed_slots(self):
        """Factor order reversed (signature reversed alongside)."""
        return TensorElement(
            tuple(reversed(self.factors)),
            tuple(reversed(self.signature)),
            {tuple(reversed(k)): c for k, c in self.terms.items()},
            self.field, normalize=False,
        )

    def to_element(self) -> Element:
        if self.rank != 1:
            raise InputError("to_element needs rank 1")
        return Element(self.factors[0], {k[0]: c for k, c in self.terms.items()})

    def scalar(self):
        if self.rank != 0:
            raise InputError("scalar needs rank 0")
        return self.terms.get((), self.field.zero)

    def transport(self, new_factors):
        """Reinterpret over other presentations sharing the atom names."""
        new_factors = tuple(new_factors)
        if len(new_factors) != self.rank:
            raise InputError("transport: rank mismatch")
        return TensorElement(new_factors, self.signature, dict(self.terms),
                             new_factors[0].field if new_factors else self.field)

    def sorted_terms(self):
        def key(item):
            words = item[0]
            return tuple(self.factors[i].word_key(words[i]) for i in range(self.rank))
        return sorted(self.terms.items(), key=key)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for words, c in self.sorted_terms():
            body = " ⊗ ".join(word_str(w) for w in words) if words else "1"
            parts.append(f"({c})·{body}")
        return " + ".join(parts)


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    return s * t
