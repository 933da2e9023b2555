"""Exact computation with one-dimensional formal group laws.

Subpackages and modules, bottom up:

* :mod:`fgl.rings` - coefficient rings, normal forms, unit and regularity tests
* :mod:`fgl.series` - truncated multivariate power series
* :mod:`fgl.laws` - formal group laws, n-series, base change
* :mod:`fgl.chromatic` - invariant differentials, homomorphisms, heights
* :mod:`fgl.elliptic` - Weierstrass curves and their formal groups
* :mod:`fgl.landweber` - the local Landweber exactness check
"""

from .chromatic import (
    AtLeast,
    ExactHeight,
    HeightReport,
    InfiniteToBound,
    NeedsExtension,
    NoneToBound,
    SeriesHomomorphism,
    TwistedElement,
    check_invariance,
    compose_homs,
    differential,
    exponential,
    find_isomorphism,
    height,
    invariant_differential,
    logarithm,
    make_hom,
    endomorphism,
    transport_law,
    u_sequence,
)
from .elliptic import (
    CurveInvariants,
    WeierstrassCurve,
    formal_group,
    invariants,
    is_generalized_elliptic,
    is_smooth,
    legendre,
    supersingular,
    transform,
)
from .kernels import BACKEND
from .landweber import ExactAtP, FailsAtP, InconclusiveAtP, LandweberReport, landweber_check
from .laws import (
    Additive,
    Elliptic,
    Explicit,
    FormalGroupLaw,
    FromLog,
    Honda,
    Multiplicative,
    PTypicalAraki,
    base_change,
    build_law,
    formal_inverse,
    n_series,
    p_series,
)
from .series import (
    TruncatedSeries,
    ZeroToBound,
    coefficient_of,
    formal_integral,
    leading_term_in_p_powers,
    partial_derivative,
    reversion,
    series_arith,
    substitute,
)

__version__ = "0.1.0"

__all__ = [
    "Additive",
    "AtLeast",
    "BACKEND",
    "CurveInvariants",
    "Elliptic",
    "ExactAtP",
    "ExactHeight",
    "Explicit",
    "FailsAtP",
    "FormalGroupLaw",
    "FromLog",
    "HeightReport",
    "Honda",
    "InconclusiveAtP",
    "InfiniteToBound",
    "LandweberReport",
    "Multiplicative",
    "NeedsExtension",
    "NoneToBound",
    "PTypicalAraki",
    "SeriesHomomorphism",
    "TruncatedSeries",
    "TwistedElement",
    "WeierstrassCurve",
    "ZeroToBound",
    "base_change",
    "build_law",
    "check_invariance",
    "coefficient_of",
    "compose_homs",
    "differential",
    "endomorphism",
    "exponential",
    "find_isomorphism",
    "formal_group",
    "formal_integral",
    "formal_inverse",
    "height",
    "invariant_differential",
    "invariants",
    "is_generalized_elliptic",
    "is_smooth",
    "landweber_check",
    "leading_term_in_p_powers",
    "legendre",
    "logarithm",
    "make_hom",
    "n_series",
    "p_series",
    "partial_derivative",
    "reversion",
    "series_arith",
    "substitute",
    "supersingular",
    "transform",
    "transport_law",
    "u_sequence",
]
