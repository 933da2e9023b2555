"""Weierstrass curves, their modular invariants and formal groups.

A curve y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 has its formal group
expanded in the parameter t = -x/y at the point at infinity, with w = -1/y.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DescriptorError, NotAUnit, TruncationTooSmall, UnsupportedRingClass
from .laws import ASSOCIATIVITY_CAP, XY, Elliptic, FormalGroupLaw
from .rings import (
    RingElement,
    as_ring,
    build_ring,
    descriptor_from_json,
    descriptor_to_json,
    parse_element,
    quotient_map,
    quotient_ring,
    ring_label,
)
from .series import TruncatedSeries, inverse

COEFFS = ("a1", "a2", "a3", "a4", "a6")


class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``ring``."""

    def __init__(self, ring, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.ring = as_ring(ring)
        vals = []
        for a in (a1, a2, a3, a4, a6):
            if isinstance(a, RingElement):
                if a.ring != self.ring:
                    raise DescriptorError(f"coefficient over {a.ring}, curve over {self.ring}")
                vals.append(a)
            else:
                vals.append(parse_element(self.ring, str(a)))
        self.a1, self.a2, self.a3, self.a4, self.a6 = vals

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def map(self, h):
        """Base change along a ring homomorphism."""
        return WeierstrassCurve(h.dst, *(h(a) for a in self.coefficients))

    def __eq__(self, other):
        return isinstance(other, WeierstrassCurve) and self.coefficients == other.coefficients

    __hash__ = None

    def __str__(self):
        lhs = "y^2"
        rhs = "x^3"
        sides = {"lhs": lhs, "rhs": rhs}
        for a, mono, side in (
            (self.a1, "x*y", "lhs"),
            (self.a3, "y", "lhs"),
            (self.a2, "x^2", "rhs"),
            (self.a4, "x", "rhs"),
            (self.a6, None, "rhs"),
        ):
            if a.is_zero():
                continue
            text = str(a)
            sign = " + "
            if text.startswith("-") and " " not in text:
                sign, text = " - ", text[1:]
            if mono is None:
                term = text if " " not in text else f"({text})"
            elif text == "1":
                term = mono
            else:
                term = f"({text})*{mono}" if " " in text else f"{text}*{mono}"
            sides[side] += sign + term
        return f"{sides['lhs']} = {sides['rhs']} over {ring_label(self.ring)}"

    def __repr__(self):
        return f"WeierstrassCurve({self})"


@dataclass(frozen=True)
class CurveInvariants:
    b2: RingElement
    b4: RingElement
    b6: RingElement
    b8: RingElement
    c4: RingElement
    c6: RingElement
    delta: RingElement

    @property
    def j(self):
        """The j-invariant as the projective pair [c4^3 : Delta]."""
        return (self.c4**3, self.delta)

    def to_json(self) -> dict:
        c4_cubed, delta = self.j
        return {
            "b2": str(self.b2),
            "b4": str(self.b4),
            "b6": str(self.b6),
            "b8": str(self.b8),
            "c4": str(self.c4),
            "c6": str(self.c6),
            "delta": str(self.delta),
            "j": [str(c4_cubed), str(delta)],
        }


def invariants(C: WeierstrassCurve) -> CurveInvariants:
    a1, a2, a3, a4, a6 = C.coefficients
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if c4**3 - c6 * c6 != 1728 * delta or 4 * b8 != b2 * b6 - b4 * b4:
        raise ArithmeticError("Weierstrass invariant identities failed; ring arithmetic is inconsistent")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, delta)


def is_smooth(C: WeierstrassCurve) -> bool:
    return invariants(C).delta.is_unit()


def is_generalized_elliptic(C: WeierstrassCurve) -> bool:
    """1 lies in the ideal (c4^3, c6^2, Delta)."""
    inv = invariants(C)
    gens = [inv.c4**3, inv.c6 * inv.c6, inv.delta]
    if any(g.is_unit() for g in gens):
        return True
    return quotient_ring(C.ring, [g.value for g in gens]).is_zero_ring


def legendre(ring, lam="l") -> WeierstrassCurve:
    """y^2 = x(x-1)(x-lam): a2 = -(1+lam), a4 = lam."""
    R = as_ring(ring)
    lam = lam if isinstance(lam, RingElement) else parse_element(R, str(lam))
    zero = RingElement(R, R.zero)
    return WeierstrassCurve(R, zero, -(1 + lam), zero, lam, zero)


def transform(C: WeierstrassCurve, u, r=0, s=0, t=0) -> WeierstrassCurve:
    """The curve in coordinates x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    R = C.ring
    u, r, s, t = (v if isinstance(v, RingElement) else parse_element(R, str(v)) for v in (u, r, s, t))
    ok = u.is_unit()
    if not ok:
        raise NotAUnit(f"u = {u} is not a unit in {ring_label(R)}")
    ui = u.inverse()
    a1, a2, a3, a4, a6 = C.coefficients
    n1 = (a1 + 2 * s) * ui
    n2 = (a2 - s * a1 + 3 * r - s * s) * ui**2
    n3 = (a3 + r * a1 + 2 * t) * ui**3
    n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui**4
    n6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) * ui**6
    return WeierstrassCurve(R, n1, n2, n3, n4, n6)


# ---------------------------------------------------------------------------
# formal group


def w_series(C: WeierstrassCurve, N: int) -> TruncatedSeries:
    """w(t) = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3, to degree N."""
    R = C.ring
    a1, a2, a3, a4, a6 = (a.value for a in C.coefficients)
    t = TruncatedSeries.variable(R, ("t",), "t", N)
    t2 = t * t
    t3 = t2 * t
    w = t3
    for _ in range(3, N):
        w2 = w * w
        w_new = t3 + (t * w).scale(a1) + (t2 * w).scale(a2) + w2.scale(a3) + (t * w2).scale(a4)
        if not R.is_zero(a6):
            w_new = w_new + (w2 * w).scale(a6)
        if w_new == w:
            break
        w = w_new
    return w


def formal_group(C: WeierstrassCurve, N: int) -> FormalGroupLaw:
    """Formal group law of C at infinity, by the chord construction, to degree N."""
    if N < 3:
        raise TruncationTooSmall("the elliptic formal group needs a bound of at least 3", required=3)
    R = C.ring
    a1, a2, a3, a4, a6 = (a.value for a in C.coefficients)
    w = w_series(C, N + 1)
    # slope of the chord through (t1, w(t1)), (t2, w(t2)): coefficient of t1^i t2^j is w_{i+j+1}
    lam = {}
    for (n,), c in w.coeffs.items():
        for i in range(n):
            if i + (n - 1 - i) <= N:
                lam[(i, n - 1 - i)] = c
    lam = TruncatedSeries(R, XY, N, lam, _trusted=True)
    t1 = TruncatedSeries.variable(R, XY, "x", N)
    t2 = TruncatedSeries.variable(R, XY, "y", N)
    w1 = TruncatedSeries(R, XY, N, {(n, 0): c for (n,), c in w.coeffs.items() if n <= N}, _trusted=True)
    nu = w1 - lam * t1
    lam2 = lam * lam
    lam3 = lam2 * lam
    A = TruncatedSeries.constant(R, XY, N, 1) + lam.scale(a2) + lam2.scale(a4) + lam3.scale(a6)
    # t^2-coefficient of the cubic cut out by the chord w = lam t + nu; Vieta gives t3
    C2 = lam.scale(a1) + lam2.scale(a3) + nu.scale(a2)
    if not R.is_zero(a4):
        C2 = C2 + (lam * nu).scale(R.scale_int(a4, 2))
    if not R.is_zero(a6):
        C2 = C2 + (lam2 * nu).scale(R.scale_int(a6, 3))
    t3 = -t1 - t2 - C2 * inverse(A)
    w3 = lam * t3 + nu
    denom = TruncatedSeries.constant(R, XY, N, 1) - t3.scale(a1) - w3.scale(a3)
    F = -t3 * inverse(denom)
    return FormalGroupLaw(F, Elliptic(C), assoc_bound=ASSOCIATIVITY_CAP)


# ---------------------------------------------------------------------------
# supersingularity

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"
NOT_SMOOTH_AT_P = "not_smooth_at_p"


def reduce_mod(C: WeierstrassCurve, p: int):
    Q, h = quotient_map(C.ring, [C.ring.from_int(p)])
    if Q.is_zero_ring:
        raise UnsupportedRingClass(f"{p} is invertible in {ring_label(C.ring)}; no reduction mod {p}")
    return C.map(h)


def supersingular(C: WeierstrassCurve, p: int, report=None):
    """ORDINARY, SUPERSINGULAR or NOT_SMOOTH_AT_P for the reduction of C mod p.

    The formal group is first built to degree p (enough to see u_1); only
    when u_1 is not a unit is it rebuilt to p^2 + p - 1 to certify height 2.
    """
    from .chromatic import ExactHeight, height

    Cp = reduce_mod(C, p)
    if not is_smooth(Cp):
        return NOT_SMOOTH_AT_P
    h1 = height(formal_group(Cp, p), p)
    if isinstance(h1.verdict, ExactHeight) and h1.verdict.n == 1:
        if report is not None:
            report.append(h1)
        return ORDINARY
    h2 = height(formal_group(Cp, p * p + p - 1), p)
    if report is not None:
        report.append(h2)
    if isinstance(h2.verdict, ExactHeight) and h2.verdict.n == 2:
        return SUPERSINGULAR
    raise UnsupportedRingClass(
        f"height over {ring_label(Cp.ring)} is not uniform ({h2.describe()}); supersingularity needs a field"
    )


def count_points(C: WeierstrassCurve) -> int:
    """#E(F_p) including the point at infinity, by exhaustive search over GF(p)."""
    R = C.ring
    p = getattr(R, "m", None)
    if p is None or not R.is_field:
        raise UnsupportedRingClass("point counting needs a prime field")
    a1, a2, a3, a4, a6 = (a.value for a in C.coefficients)
    count = 1
    for x in range(p):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                count += 1
    return count


def supersingular_by_count(C: WeierstrassCurve) -> bool:
    """#E(F_p) = 1 mod p, equivalently trace of Frobenius = 0 mod p."""
    return count_points(C) % C.ring.m == 1


# ---------------------------------------------------------------------------
# files


def curve_to_json(C: WeierstrassCurve) -> dict:
    out = {name: str(a) for name, a in zip(COEFFS, C.coefficients)}
    desc = getattr(C.ring, "descriptor", None)
    if desc is not None:
        out["ring"] = descriptor_to_json(desc)
    return out


def curve_from_json(d: dict, ring=None) -> WeierstrassCurve:
    if ring is None:
        if d.get("ring") is None:
            raise DescriptorError("curve file needs a 'ring'")
        ring = build_ring(descriptor_from_json(d["ring"]))
    return WeierstrassCurve(ring, *(str(d.get(name, "0")) for name in COEFFS))


def load_fixture(name: str):
    """(printed curve or None, plausible correction, metadata) for a bundled curve file."""
    from importlib.resources import files

    data = json.loads(files("fgl").joinpath("data", f"{name}.json").read_text())
    ring = build_ring(descriptor_from_json(data["ring"]))
    printed = curve_from_json(data["curve"], ring) if data.get("curve") else None
    corrected = curve_from_json(data["plausible_correction"], ring)
    return printed, corrected, data
