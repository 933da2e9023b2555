"""Ring descriptors: hashable, JSON-serializable names for coefficient rings.

A descriptor only *names* a ring; :func:`fgl.rings.build_ring` turns it into an
arithmetic object.  Cheap structural checks (modulus, primality, min-poly
irreducibility, unique variable names) happen at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from ..errors import DescriptorError
from ..numtheory import is_irreducible_mod_p, is_prime

_MAX_FIELD_DEGREE = 8


@dataclass(frozen=True)
class Integers:
    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class Rationals:
    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class IntegersMod:
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise DescriptorError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    def __str__(self):
        return f"ZZ/{self.modulus}"


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DescriptorError(f"{self.p!r} is not prime")

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class FiniteField:
    """GF(p^d) = F_p[gen]/(min_poly); ``min_poly`` is ascending (c0, ..., c_d) with c_d = 1."""

    p: int
    degree: int
    min_poly: tuple
    gen: str = "a"

    def __post_init__(self):
        object.__setattr__(self, "min_poly", tuple(int(c) for c in self.min_poly))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DescriptorError(f"{self.p!r} is not prime")
        if not 1 <= self.degree <= _MAX_FIELD_DEGREE:
            raise DescriptorError(f"field degree must be in 1..{_MAX_FIELD_DEGREE}")
        if len(self.min_poly) != self.degree + 1:
            raise DescriptorError("min_poly must have degree+1 coefficients")
        if self.min_poly[-1] % self.p != 1:
            raise DescriptorError("min_poly must be monic (last coefficient 1)")
        if not is_irreducible_mod_p(self.min_poly, self.p):
            raise DescriptorError(f"min_poly {list(self.min_poly)} is reducible over F_{self.p}")
        _check_names((self.gen,))

    def __str__(self):
        return f"GF({self.p}^{self.degree})"


@dataclass(frozen=True)
class Polynomial:
    base: "RingDescriptor"
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise DescriptorError("polynomial ring needs at least one variable")
        _check_names(self.vars)

    def __str__(self):
        return f"{self.base}[{', '.join(self.vars)}]"


@dataclass(frozen=True)
class Quotient:
    base: "RingDescriptor"
    ideal: tuple

    def __post_init__(self):
        object.__setattr__(self, "ideal", tuple(str(g) for g in self.ideal))

    def __str__(self):
        return f"{self.base}/({', '.join(self.ideal)})"


@dataclass(frozen=True)
class Localization:
    base: "RingDescriptor"
    inverted: tuple

    def __post_init__(self):
        object.__setattr__(self, "inverted", tuple(str(g) for g in self.inverted))

    def __str__(self):
        inv = ", ".join(f"1/{s}" if s.isalnum() else f"1/({s})" for s in self.inverted)
        return f"{self.base}[{inv}]"


RingDescriptor = Union[
    Integers, Rationals, IntegersMod, PrimeField, FiniteField, Polynomial, Quotient, Localization
]


def _check_names(names):
    seen = set()
    for name in names:
        if not isinstance(name, str) or not name.isidentifier():
            raise DescriptorError(f"invalid variable name {name!r}")
        if name in seen:
            raise DescriptorError(f"duplicate variable name {name!r}")
        seen.add(name)


def descriptor_to_json(d: RingDescriptor) -> dict:
    if isinstance(d, Integers):
        return {"kind": "integers"}
    if isinstance(d, Rationals):
        return {"kind": "rationals"}
    if isinstance(d, IntegersMod):
        return {"kind": "mod", "m": d.modulus}
    if isinstance(d, PrimeField):
        return {"kind": "prime_field", "p": d.p}
    if isinstance(d, FiniteField):
        out = {"kind": "finite_field", "p": d.p, "degree": d.degree, "min_poly": list(d.min_poly)}
        if d.gen != "a":
            out["gen"] = d.gen
        return out
    if isinstance(d, Polynomial):
        return {"kind": "poly", "base": descriptor_to_json(d.base), "vars": list(d.vars)}
    if isinstance(d, Quotient):
        return {"kind": "quotient", "base": descriptor_to_json(d.base), "ideal": list(d.ideal)}
    if isinstance(d, Localization):
        return {"kind": "localize", "base": descriptor_to_json(d.base), "invert": list(d.inverted)}
    raise DescriptorError(f"not a ring descriptor: {d!r}")


def descriptor_from_json(obj) -> RingDescriptor:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptorError(f"ring descriptor must be an object with a 'kind': {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "integers":
            return Integers()
        if kind == "rationals":
            return Rationals()
        if kind == "mod":
            return IntegersMod(int(obj["m"]))
        if kind == "prime_field":
            return PrimeField(int(obj["p"]))
        if kind == "finite_field":
            return FiniteField(
                int(obj["p"]), int(obj["degree"]), tuple(obj["min_poly"]), obj.get("gen", "a")
            )
        if kind == "poly":
            return Polynomial(descriptor_from_json(obj["base"]), tuple(obj["vars"]))
        if kind == "quotient":
            return Quotient(descriptor_from_json(obj["base"]), tuple(obj["ideal"]))
        if kind == "localize":
            return Localization(descriptor_from_json(obj["base"]), tuple(obj["invert"]))
    except KeyError as exc:
        raise DescriptorError(f"ring descriptor of kind {kind!r} is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(f"bad ring descriptor: {exc}") from None
    raise DescriptorError(f"unknown ring kind {kind!r}")
