"""Descriptor -> ring construction, ring elements and ring homomorphisms."""

from __future__ import annotations

import copy
from fractions import Fraction
from functools import lru_cache

from ..errors import DescriptorError, NotAUnit, RelationViolation, RingMismatch
from . import descriptors as D
from . import groebner as gb
from .coefficients import (
    CoefficientRing,
    IntegerRing,
    LocalizedIntegers,
    ModularRing,
    RationalField,
)
from .expr import parse_raw
from .polyring import PolyRing


@lru_cache(maxsize=256)
def build_ring(desc):
    """Arithmetic ring object for a descriptor (cached; rings are immutable)."""
    ring = _build(desc)
    ring.descriptor = desc
    return ring


def _build(desc):
    if isinstance(desc, D.Integers):
        return IntegerRing()
    if isinstance(desc, D.Rationals):
        return RationalField()
    if isinstance(desc, D.IntegersMod):
        return ModularRing(desc.modulus)
    if isinstance(desc, D.PrimeField):
        return ModularRing(desc.p)
    if isinstance(desc, D.FiniteField):
        rel = {(i,): c % desc.p for i, c in enumerate(desc.min_poly) if c % desc.p}
        return PolyRing(ModularRing(desc.p), (desc.gen,), [rel], field_order=desc.p**desc.degree)
    if isinstance(desc, D.Polynomial):
        base = build_ring(desc.base)
        if isinstance(base, CoefficientRing):
            return PolyRing(base, desc.vars)
        clash = set(base.names) & set(desc.vars)
        if clash:
            raise DescriptorError(f"variable names {sorted(clash)} already used by the base ring")
        return base.extend(desc.vars)
    if isinstance(desc, D.Quotient):
        base = build_ring(desc.base)
        gens = [parse_raw(base, g) for g in desc.ideal]
        if isinstance(base, CoefficientRing):
            ring = base
            for g in gens:
                ring = ring.quotient_constant(g)
            return _fresh(ring)
        return base.with_relations(gens)
    if isinstance(desc, D.Localization):
        ring = build_ring(desc.base)
        for text in desc.inverted:
            s = parse_raw(ring, text)
            ring = localize(ring, s)
        return _fresh(ring)
    raise DescriptorError(f"not a ring descriptor: {desc!r}")


def _fresh(ring):
    # coefficient-ring operations may hand back a shared (cached) object whose
    # descriptor must not be overwritten; rings compare by key, so a copy is equal
    return copy.copy(ring) if isinstance(ring, CoefficientRing) else ring


def localize(ring, s):
    """ring[1/s]: constants change the coefficient ring, others adjoin an inverse variable."""
    if isinstance(ring, CoefficientRing):
        return ring.localize_constant(s)
    if gb.is_constant(s):
        return ring.with_coeff(ring.coeff.localize_constant(ring.constant_value(s)))
    k = 1
    while f"inv{k}" in ring.names:
        k += 1
    name = f"inv{k}"
    ext = ring.extend([name])
    lifted = {e + (0,): c for e, c in s.items()}
    inv_var = ext.gen(name)
    rel = ext.sub(gb.pmul(ext.coeff, lifted, inv_var), ext.one)
    return ext.with_relations([rel], inverse_of={name: lifted})


def quotient_ring(ring, generators):
    """ring/(generators) for raw generators; keeps a readable descriptor."""
    texts = tuple(ring.format(g) for g in generators)
    if isinstance(ring, CoefficientRing):
        out = ring
        for g in generators:
            out = out.quotient_constant(g)
        out = _fresh(out)
    else:
        out = ring.with_relations(generators)
    base_desc = getattr(ring, "descriptor", None)
    if isinstance(base_desc, D.Quotient):
        out.descriptor = D.Quotient(base_desc.base, tuple(base_desc.ideal) + texts)
    else:
        out.descriptor = D.Quotient(base_desc, texts) if base_desc is not None else None
    return out


def as_ring(ring_or_desc):
    if isinstance(ring_or_desc, (CoefficientRing, PolyRing)):
        return ring_or_desc
    return build_ring(ring_or_desc)


def ring_label(ring):
    desc = getattr(ring, "descriptor", None)
    return str(desc) if desc is not None else str(ring)


# ---------------------------------------------------------------------------
class RingElement:
    """An element of a ring in canonical form; immutable."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e):
        return RingElement(self.ring, self.ring.pow(self.value, int(e)))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, str(self)))

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def is_unit(self):
        return is_unit(self)[0]

    def inverse(self):
        ok, inv = is_unit(self)
        if not ok:
            raise NotAUnit(f"{self} is not a unit in {self.ring}")
        return inv

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self}, {self.ring})"


def parse_element(ring, text) -> RingElement:
    R = as_ring(ring)
    return RingElement(R, parse_raw(R, text))


def ring_arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    if a.ring != b.ring:
        raise RingMismatch(f"descriptor mismatch: {a.ring} vs {b.ring}")
    fn = {"add": a.ring.add, "sub": a.ring.sub, "mul": a.ring.mul}[op]
    return RingElement(a.ring, fn(a.value, b.value))


def is_unit(a: RingElement):
    """(True, inverse) or (False, None)."""
    inv = a.ring.unit_inverse(a.value)
    if inv is None:
        return False, None
    return True, RingElement(a.ring, inv)


def is_regular(a: RingElement) -> bool:
    return a.ring.is_regular(a.value)[0]


def zero_divisor_witness(a: RingElement):
    """Nonzero b with a*b = 0, or None when a is regular."""
    ok, w = a.ring.is_regular(a.value)
    return None if ok else RingElement(a.ring, w)


# ---------------------------------------------------------------------------
class RingHomomorphism:
    """A ring map determined by the canonical map on coefficients and variable images."""

    def __init__(self, src, dst, images=None):
        self.src = as_ring(src)
        self.dst = as_ring(dst)
        self._cmap = _coefficient_map(self.src, self.dst)
        images = dict(images or {})
        self.images = {}
        self._powers = {}
        for name in getattr(self.src, "names", ()):
            if name in images:
                img = images[name]
                if isinstance(img, RingElement):
                    if img.ring != self.dst:
                        raise RingMismatch(f"image of {name} lives in {img.ring}, not {self.dst}")
                    img = img.value
                else:
                    img = parse_raw(self.dst, img)
            elif name in getattr(self.dst, "names", ()):
                img = self.dst.gen(name)
            elif name in self.src.inverse_of:
                s_img = self._eval(self.src.inverse_of[name], upto=name)
                img = self.dst.unit_inverse(s_img)
                if img is None:
                    raise RelationViolation(
                        f"{self.dst.format(s_img)} is not a unit in {self.dst}; cannot map {name}",
                        generator=name,
                    )
            else:
                raise RelationViolation(f"no image given for variable {name}", generator=name)
            self.images[name] = img
        unknown = set(images) - set(getattr(self.src, "names", ()))
        if unknown:
            raise RelationViolation(f"unknown source variables {sorted(unknown)}")
        for rel in getattr(self.src, "relations", ()):
            if not self.dst.is_zero(self._eval(rel)):
                raise RelationViolation(
                    f"relation {self.src.format(rel)} = 0 is not preserved",
                    generator=self.src.format(rel),
                )

    def _power(self, name, k):
        key = (name, k)
        if key not in self._powers:
            self._powers[key] = self.dst.pow(self.images[name], k)
        return self._powers[key]

    def _eval(self, raw, upto=None):
        dst = self.dst
        if isinstance(self.src, CoefficientRing):
            return self._cmap(raw)
        names = self.src.names
        if upto is not None:
            names = names[: names.index(upto)]
        total = dst.zero
        for e, c in raw.items():
            term = self._cmap(c)
            for name, k in zip(names, e):
                if k:
                    term = dst.mul(term, self._power(name, k))
            total = dst.add(total, term)
        return total

    def apply_raw(self, raw):
        return self._eval(raw)

    def __call__(self, a):
        if isinstance(a, RingElement):
            if a.ring != self.src:
                raise RingMismatch(f"element of {a.ring} given to a map from {self.src}")
            return RingElement(self.dst, self._eval(a.value))
        return RingElement(self.dst, self._eval(parse_raw(self.src, a)))

    apply = __call__


def ring_hom(src, dst, images=None) -> RingHomomorphism:
    return RingHomomorphism(src, dst, images)


def _base_coeff(ring):
    return ring if isinstance(ring, CoefficientRing) else ring.coeff


def _coefficient_map(src, dst):
    C = _base_coeff(src)
    coerce = dst.coerce
    if isinstance(C, IntegerRing):
        return coerce
    if isinstance(C, ModularRing):
        if not dst.is_zero(dst.from_int(C.m)):
            raise RelationViolation(f"{C.m} = 0 in {src} but not in {dst}", generator=str(C.m))
        return coerce
    if isinstance(C, LocalizedIntegers):
        for p in C.primes:
            if dst.unit_inverse(dst.from_int(p)) is None:
                raise RelationViolation(f"{p} is invertible in {src} but not in {dst}", generator=f"1/{p}")
        return coerce
    if isinstance(C, RationalField):
        D_ = _base_coeff(dst)
        if not (isinstance(D_, RationalField) or D_.is_zero_ring):
            raise RelationViolation(f"{dst} is not a QQ-algebra", generator="1/n")
        return coerce
    raise RelationViolation(f"no canonical map from {src} to {dst}")


def quotient_map(ring, generators):
    """(quotient ring, homomorphism ring -> quotient)."""
    Q = quotient_ring(ring, generators)
    return Q, RingHomomorphism(ring, Q)
