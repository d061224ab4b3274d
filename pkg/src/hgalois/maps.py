"""Generator-image maps extended multiplicatively to whole algebras.

A `GeneratorMap` stores one target tensor per atom of the source
presentation and extends to words by slot-wise tensor multiplication, so
twisted target slots automatically make the extension anti-multiplicative
there.  Images of formal inverses are derived from single-term images
when not supplied, and are always verified to multiply to the unit.
"""

from .errors import InputError
from .presentations import Element, inverse_atom, word_str
from .reports import CheckEntry, VerificationReport
from .tensors import OP, PLAIN, TensorElement


class GeneratorMap:
    def __init__(self, source, targets, signature, images, *, field=None, name="map"):
        self.source = source
        self.targets = tuple(targets)
        self.signature = tuple(bool(s) for s in signature)
        self.name = name
        self.field = field if field is not None else (
            self.targets[0].field if self.targets else source.field
        )
        if len(self.targets) != len(self.signature):
            raise InputError(f"{name}: signature length differs from target count")

        self.images: dict[str, TensorElement] = {}
        for atom, img in images.items():
            source.atom_key(atom)
            self.images[atom] = self._coerce_image(atom, img)
        self._complete_inverses()
        missing = [a for a in source.atoms if a not in self.images]
        if missing:
            raise InputError(f"{name}: missing image for generator {missing[0]!r}")

    def _coerce_image(self, atom, img) -> TensorElement:
        if isinstance(img, Element):
            img = TensorElement.outer([img], self.signature or (PLAIN,))
        if not isinstance(img, TensorElement):
            raise InputError(f"{self.name}: image of {atom!r} is not a tensor or element")
        if len(img.factors) != len(self.targets) or any(
            a is not b for a, b in zip(img.factors, self.targets)
        ):
            raise InputError(f"{self.name}: image of {atom!r} has wrong factor presentations")
        if img.signature != self.signature:
            raise InputError(f"{self.name}: image of {atom!r} has wrong twist signature")
        return img

    def _complete_inverses(self):
        unit = TensorElement.unit(self.targets, self.signature, self.field)
        for gen in self.source.generators:
            if not gen.invertible:
                continue
            inv = inverse_atom(gen.name)
            img = self.images.get(gen.name)
            if img is None:
                raise InputError(f"{self.name}: missing image for generator {gen.name!r}")
            if inv not in self.images:
                derived = _invert_tensor(img)
                if derived is None:
                    raise InputError(
                        f"{self.name}: cannot derive image of {inv}; supply it explicitly"
                    )
                self.images[inv] = derived
            if (img * self.images[inv] != unit) or (self.images[inv] * img != unit):
                raise InputError(
                    f"{self.name}: image of {inv} is not a two-sided inverse of the "
                    f"image of {gen.name}"
                )

    # ------------------------------------------------------------------
    @property
    def rank(self):
        return len(self.targets)

    def apply_word(self, word) -> TensorElement:
        out = TensorElement.unit(self.targets, self.signature, self.field)
        for atom in word:
            img = self.images.get(atom)
            if img is None:
                raise InputError(f"{self.name}: no image for atom {atom!r}")
            out = out * img
        return out

    def apply(self, value) -> TensorElement:
        """Image of an Element (or raw word) of the source algebra."""
        if isinstance(value, Element):
            if value.presentation is not self.source:
                raise InputError(f"{self.name}: element from a different presentation")
            out = TensorElement.zero(self.targets, self.signature, self.field)
            for word, coeff in value.terms.items():
                out = out + self.apply_word(word).scale(coeff)
            return out
        return self.apply_word(self.source.validate_word(value))

    def apply_element(self, value) -> Element:
        return self.apply(value).to_element()

    def apply_scalar(self, value):
        return self.apply(value).scalar()

    def with_images(self, replacements, *, name=None):
        """Copy of the map with some atom images replaced (inverse images
        are re-derived unless explicitly replaced)."""
        images = {a: img for a, img in self.images.items()}
        for gen in self.source.generators:
            if gen.invertible and gen.name in replacements:
                images.pop(inverse_atom(gen.name), None)
        images.update(replacements)
        return GeneratorMap(self.source, self.targets, self.signature, images,
                            field=self.field, name=name or self.name)

    # ------------------------------------------------------------------
    @classmethod
    def algebra_map(cls, source, target, images, *, name="map"):
        return cls(source, (target,), (PLAIN,), images, name=name)

    @classmethod
    def anti_algebra_map(cls, source, target, images, *, name="map"):
        """Target carries the opposite product, so words map anti-multiplicatively."""
        return cls(source, (target,), (OP,), images, name=name)

    @classmethod
    def scalar_map(cls, source, images, *, name="map"):
        field = source.field
        tensor_images = {
            atom: TensorElement.scalar_value(field, value)
            for atom, value in images.items()
        }
        return cls(source, (), (), tensor_images, field=field, name=name)

    @classmethod
    def identity(cls, pres, *, name="id"):
        images = {g.name: pres.atom_element(g.name) for g in pres.generators}
        return cls.algebra_map(pres, pres, images, name=name)

    def __repr__(self):
        sig = ",".join("op" if s else "plain" for s in self.signature)
        return f"GeneratorMap({self.name}: rank {self.rank} [{sig}])"


def _invert_tensor(img: TensorElement):
    if len(img.terms) != 1:
        return None
    words, coeff = next(iter(img.terms.items()))
    inv_words = []
    for pres, w in zip(img.factors, words):
        inv = pres.invert(Element(pres, {w: pres.field.one}))
        if inv is None or len(inv.terms) != 1:
            return None
        (iw, ic), = inv.terms.items()
        if ic != pres.field.one:
            return None
        inv_words.append(iw)
    return TensorElement(img.factors, img.signature,
                         {tuple(inv_words): img.field.one / coeff}, img.field)


def compose(outer: GeneratorMap, inner: GeneratorMap, *, name="composite") -> GeneratorMap:
    """outer ∘ inner for a rank-1 inner map."""
    if inner.rank != 1:
        raise InputError("compose: inner map must have rank 1")
    if inner.targets[0] is not outer.source:
        raise InputError("compose: inner target differs from outer source")
    images = {
        g.name: outer.apply(inner.apply_element(inner.source.atom_element(g.name)))
        for g in inner.source.generators
    }
    return GeneratorMap(inner.source, outer.targets, outer.signature, images, name=name)


def check_map_respects_relations(gmap: GeneratorMap, *, anchor="algebra map well-defined") -> VerificationReport:
    """One entry per rewrite rule of the source: image(lhs) == image(rhs)."""
    entries = []
    for rule in gmap.source.rules:
        lhs = gmap.apply_word(rule.lhs)
        rhs = gmap.apply(rule.rhs)
        diff = lhs - rhs
        entries.append(CheckEntry(
            check=f"{gmap.name} respects relation",
            anchor=anchor,
            subject=f"{word_str(rule.lhs)} -> {rule.rhs}",
            passed=not diff,
            witness=None if not diff else diff,
        ))
    return VerificationReport(entries)
