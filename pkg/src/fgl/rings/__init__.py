"""Coefficient rings: descriptors, exact arithmetic, decisions and ring maps."""

from .build import (
    RingElement,
    RingHomomorphism,
    as_ring,
    build_ring,
    is_regular,
    is_unit,
    localize,
    parse_element,
    quotient_map,
    quotient_ring,
    ring_arith,
    ring_hom,
    ring_label,
    zero_divisor_witness,
)
from .coefficients import CoefficientRing, IntegerRing, LocalizedIntegers, ModularRing, RationalField
from .descriptors import (
    FiniteField,
    Integers,
    IntegersMod,
    Localization,
    Polynomial,
    PrimeField,
    Quotient,
    Rationals,
    RingDescriptor,
    descriptor_from_json,
    descriptor_to_json,
)
from .expr import parse_raw
from .polyring import PolyRing

__all__ = [
    "CoefficientRing",
    "FiniteField",
    "IntegerRing",
    "Integers",
    "IntegersMod",
    "Localization",
    "LocalizedIntegers",
    "ModularRing",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "Quotient",
    "RationalField",
    "Rationals",
    "RingDescriptor",
    "RingElement",
    "RingHomomorphism",
    "as_ring",
    "build_ring",
    "descriptor_from_json",
    "descriptor_to_json",
    "is_regular",
    "is_unit",
    "localize",
    "parse_element",
    "parse_raw",
    "quotient_map",
    "quotient_ring",
    "ring_arith",
    "ring_hom",
    "ring_label",
    "zero_divisor_witness",
]
