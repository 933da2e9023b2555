"""Invariant differentials, logarithms, homomorphisms and height invariants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DescriptorError, HomomorphyFailure, TruncationTooSmall, UnsupportedRingClass
from .laws import XY, FormalGroupLaw, base_change, p_series
from .numtheory import first_irreducible, is_prime
from .rings import FiniteField, RingElement, build_ring, quotient_map, ring_hom, ring_label
from .rings.coefficients import ModularRing
from .rings.polyring import PolyRing
from .series import (
    TruncatedSeries,
    ZeroToBound,
    compose,
    formal_integral,
    inverse,
    leading_term_in_p_powers,
    partial_derivative,
    reversion,
    substitute,
)

# ---------------------------------------------------------------------------
# differentials


def invariant_differential(law: FormalGroupLaw) -> TruncatedSeries:
    """g(x) with eta = g(x) dx the canonical invariant differential: g = 1/F_y(x, 0)."""
    Fy = partial_derivative(law.F, "y")
    R = law.ring
    restricted = {(e[0],): c for e, c in Fy.coeffs.items() if e[1] == 0}
    return inverse(TruncatedSeries(R, ("x",), Fy.bound, restricted, _trusted=True))


def check_invariance(law: FormalGroupLaw, g: TruncatedSeries) -> bool:
    """g(F) F_x = g(x) and g(F) F_y = g(y), to the common bound."""
    F = law.F
    R = law.ring
    if g.ring != R:
        return False
    g = g.rename(("x",))
    M = min(g.bound, F.bound - 1)
    gF = substitute(g.truncate(M), {"x": F.truncate(M)})
    x = TruncatedSeries.variable(R, XY, "x", M)
    y = TruncatedSeries.variable(R, XY, "y", M)
    gx = substitute(g.truncate(M), {"x": x})
    gy = substitute(g.truncate(M), {"x": y})
    Fx = partial_derivative(F, "x").truncate(M)
    Fy = partial_derivative(F, "y").truncate(M)
    return gF * Fx == gx and gF * Fy == gy


def logarithm(law: FormalGroupLaw) -> TruncatedSeries:
    """log_F = integral of the invariant differential; needs exact division by n."""
    return formal_integral(invariant_differential(law))


def exponential(law: FormalGroupLaw) -> TruncatedSeries:
    return reversion(logarithm(law))


# ---------------------------------------------------------------------------
# homomorphisms


class SeriesHomomorphism:
    """phi : source -> target with phi(F_src(x, y)) = F_tgt(phi(x), phi(y))."""

    def __init__(self, source: FormalGroupLaw, target: FormalGroupLaw, phi: TruncatedSeries, check=True):
        if source.ring != target.ring or phi.ring != source.ring:
            raise DescriptorError("homomorphism data must live over one ring")
        phi = phi.rename(("x",))
        if not phi.ring.is_zero(phi.constant_term()):
            raise DescriptorError("phi must have zero constant term")
        self.source = source
        self.target = target
        self.bound = min(phi.bound, source.bound, target.bound)
        self.phi = phi.truncate(self.bound)
        if check:
            bad = homomorphy_defect(source, target, self.phi)
            if bad is not None:
                raise HomomorphyFailure(
                    f"phi(F1(x,y)) and F2(phi(x),phi(y)) differ at bidegree {list(bad)}", exponent=bad
                )

    @property
    def ring(self):
        return self.phi.ring

    def differential(self) -> RingElement:
        return differential(self)

    def is_isomorphism(self) -> bool:
        return self.differential().is_unit()

    def __call__(self, s: TruncatedSeries) -> TruncatedSeries:
        return substitute(self.phi, {"x": s})

    def __str__(self):
        return str(self.phi)


def homomorphy_defect(F1: FormalGroupLaw, F2: FormalGroupLaw, phi: TruncatedSeries):
    """First bidegree where phi fails to be a homomorphism, or None."""
    N = min(phi.bound, F1.bound, F2.bound)
    R = phi.ring
    phi = phi.truncate(N)
    x = TruncatedSeries.variable(R, XY, "x", N)
    y = TruncatedSeries.variable(R, XY, "y", N)
    lhs = substitute(phi, {"x": F1.F.truncate(N)})
    rhs = substitute(F2.F.truncate(N), {"x": substitute(phi, {"x": x}), "y": substitute(phi, {"x": y})})
    return lhs.first_difference(rhs)


def make_hom(F1: FormalGroupLaw, F2: FormalGroupLaw, phi: TruncatedSeries) -> SeriesHomomorphism:
    return SeriesHomomorphism(F1, F2, phi)


def differential(h: SeriesHomomorphism) -> RingElement:
    """phi'(0): d(phi) acts on invariant differentials by this scalar."""
    return RingElement(h.ring, h.phi.coeffs.get((1,), h.ring.zero))


def compose_homs(h2: SeriesHomomorphism, h1: SeriesHomomorphism) -> SeriesHomomorphism:
    """h2 o h1 : h1.source -> h2.target."""
    if h1.target != h2.source:
        raise DescriptorError("homomorphisms are not composable")
    return SeriesHomomorphism(h1.source, h2.target, compose(h2.phi, h1.phi), check=False)


def identity_hom(law: FormalGroupLaw) -> SeriesHomomorphism:
    return SeriesHomomorphism(law, law, law.x(), check=False)


def transport_law(law: FormalGroupLaw, phi: TruncatedSeries):
    """(G, h) with G(x, y) = phi(F(psi x, psi y)), psi = phi^-1, and h = phi : F -> G.

    ``phi`` needs a unit linear coefficient; G is a valid law by construction.
    """
    N = law.bound
    phi = phi.rename(("x",)).truncate(N)
    psi = reversion(phi)
    R = law.ring
    x = TruncatedSeries.variable(R, XY, "x", N)
    y = TruncatedSeries.variable(R, XY, "y", N)
    inner = law(substitute(psi, {"x": x}), substitute(psi, {"x": y}))
    G = FormalGroupLaw(substitute(phi, {"x": inner}), validate=False)
    return G, SeriesHomomorphism(law, G, phi, check=False)


def endomorphism(law: FormalGroupLaw, n: int) -> SeriesHomomorphism:
    """Multiplication by n as a self-map of the law."""
    from .laws import n_series

    return SeriesHomomorphism(law, law, n_series(law, n), check=False)


# ---------------------------------------------------------------------------
# heights


@dataclass(frozen=True)
class TwistedElement:
    """A ring element living in the twist-th tensor power of the invariant differentials."""

    value: RingElement
    twist: int

    def __mul__(self, other):
        return TwistedElement(self.value * other.value, self.twist + other.twist)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class ExactHeight:
    n: int
    witness: RingElement | None = None
    kind = "exact"


@dataclass(frozen=True)
class AtLeast:
    n: int
    kind = "at_least"


@dataclass(frozen=True)
class InfiniteToBound:
    bound: int
    kind = "infinite_to_bound"


@dataclass(frozen=True)
class USeqEntry:
    n: int
    value: TwistedElement
    ring: str


@dataclass
class HeightReport:
    p: int
    bound: int
    verdict: object
    u_seq: list = field(default_factory=list)

    def to_json(self) -> dict:
        v = {"kind": self.verdict.kind}
        if isinstance(self.verdict, InfiniteToBound):
            v["n"] = None
        else:
            v["n"] = self.verdict.n
        return {
            "p": self.p,
            "bound": self.bound,
            "verdict": v,
            "u_seq": [
                {"n": e.n, "value": str(e.value), "twist": e.value.twist, "ring": e.ring} for e in self.u_seq
            ],
        }

    def describe(self) -> str:
        v = self.verdict
        if isinstance(v, ExactHeight):
            return f"height exactly {v.n}"
        if isinstance(v, AtLeast):
            return f"height at least {v.n}"
        return f"p-series vanishes to degree {v.bound}"


def _entry(n, ring, raw, p):
    return USeqEntry(n, TwistedElement(RingElement(ring, raw), p**n - 1), ring_label(ring))


def height(law: FormalGroupLaw, p: int) -> HeightReport:
    """Leading p-power analysis of [p](x) over an F_p-algebra."""
    R = law.ring
    if not R.is_zero(R.from_int(p)):
        raise DescriptorError(f"height needs an F_{p}-algebra; {p} != 0 in {R}")
    if law.bound < p:
        raise TruncationTooSmall(f"bound {law.bound} cannot see x^{p}; need N >= {p}", required=p)
    s = p_series(law, p)
    lead = leading_term_in_p_powers(s, p)
    if isinstance(lead, ZeroToBound):
        entries = [_entry(n, R, s.coefficient((p**n,)), p) for n in range(0, _max_power(p, law.bound) + 1)]
        return HeightReport(p, law.bound, InfiniteToBound(law.bound), entries)
    n, u = lead
    entries = [_entry(k, R, s.coefficient((p**k,)), p) for k in range(0, n + 1)]
    ok, inv = _unit(u)
    verdict = ExactHeight(n, inv) if ok else AtLeast(n)
    return HeightReport(p, law.bound, verdict, entries)


def _max_power(p, N):
    k = 0
    while p ** (k + 1) <= N:
        k += 1
    return k


def _unit(u: RingElement):
    inv = u.ring.unit_inverse(u.value)
    return (inv is not None), (RingElement(u.ring, inv) if inv is not None else None)


def u_sequence(law: FormalGroupLaw, p: int, n_max: int = 3, steps=None) -> HeightReport:
    """u_0 = p, then u_n = coefficient of x^(p^n) in [p](x) modulo (p, u_1, ..., u_{n-1}).

    ``steps`` (optional list) receives ``(n, ring, raw u_n, ring map into the
    next quotient)`` for callers that need the intermediate rings.
    """
    if not is_prime(p):
        raise DescriptorError(f"{p} is not prime")
    R = law.ring
    N = law.bound
    u0 = R.from_int(p)
    entries = [_entry(0, R, u0, p)]
    if steps is not None:
        steps.append((0, R, u0))
    if R.unit_inverse(u0) is not None:
        return HeightReport(p, N, ExactHeight(0, RingElement(R, R.unit_inverse(u0))), entries)
    if N < p:
        raise TruncationTooSmall(f"bound {N} cannot see x^{p}; need N >= {p}", required=p)
    if R.is_zero(u0):
        Q, s = R, p_series(law, p)
    else:
        Q, h = quotient_map(R, [u0])
        s = p_series(base_change(law, h), p)
    for n in range(1, n_max + 1):
        lead = leading_term_in_p_powers(s, p)
        if isinstance(lead, ZeroToBound):
            if p**n <= N:
                entries.append(_entry(n, Q, Q.zero, p))
                if steps is not None:
                    steps.append((n, Q, Q.zero))
            return HeightReport(p, N, InfiniteToBound(N), entries)
        if p**n > N:
            raise TruncationTooSmall(
                f"u_{n} sits at x^{p**n}, beyond the bound {N}", required=p**n
            )
        un = s.coefficient((p**n,))
        entries.append(_entry(n, Q, un, p))
        if steps is not None:
            steps.append((n, Q, un))
        inv = Q.unit_inverse(un)
        if inv is not None:
            return HeightReport(p, N, ExactHeight(n, RingElement(Q, inv)), entries)
        if not Q.is_zero(un):
            Q2, h2 = quotient_map(Q, [un])
            s = s.map_coefficients(h2.apply_raw, Q2)
            Q = Q2
    return HeightReport(p, N, AtLeast(n_max + 1), entries)


# ---------------------------------------------------------------------------
# isomorphism search


@dataclass(frozen=True)
class NeedsExtension:
    """No isomorphism over fields of degree <= max_degree, though heights agree."""

    max_degree: int
    kind = "needs_extension"


@dataclass(frozen=True)
class NoneToBound:
    bound: int
    reason: str
    kind = "none_to_bound"


def field_elements(ring):
    """All elements of GF(p) or GF(p^d) in increasing order of sum c_i p^i."""
    if isinstance(ring, ModularRing) and ring.is_field:
        return list(range(ring.m))
    if isinstance(ring, PolyRing) and ring.is_field and ring.nvars == 1:
        p = ring.coeff.m
        d = _field_degree(ring)
        out = []
        for k in range(p**d):
            digits = [(k // p**i) % p for i in range(d)]
            out.append({(i,): c for i, c in enumerate(digits) if c})
        return out
    raise UnsupportedRingClass(f"isomorphism search needs a finite field, got {ring}")


def _field_degree(ring):
    q, p, d = ring.field_order, ring.coeff.m, 0
    while q > 1:
        q //= p
        d += 1
    return d


def _field_char(ring):
    if isinstance(ring, ModularRing) and ring.is_field:
        return ring.m, 1
    if isinstance(ring, PolyRing) and ring.is_field and ring.nvars == 1:
        return ring.coeff.m, _field_degree(ring)
    raise UnsupportedRingClass(f"isomorphism search needs a finite field, got {ring}")


def extension_field(p: int, d: int, gen="b"):
    return build_ring(FiniteField(p, d, first_irreducible(p, d), gen))


def _embedding(src, dst):
    """Ring map from a finite field into an extension of it."""
    if isinstance(src, ModularRing):
        return ring_hom(src, dst)
    name = src.names[0]
    rel = src.relations[0]
    for a in field_elements(dst):
        val = dst.zero
        for e, c in rel.items():
            val = dst.add(val, dst.mul(dst.from_int(c), dst.pow(a, e[0])))
        if dst.is_zero(val):
            return ring_hom(src, dst, {name: RingElement(dst, a)})
    raise UnsupportedRingClass(f"{src} does not embed in {dst}")


def find_isomorphism(F1: FormalGroupLaw, F2: FormalGroupLaw, max_ext_degree: int = 2, bound=None):
    """Search phi with phi'(0) a unit and phi(F1(x,y)) = F2(phi(x), phi(y))."""
    if F1.ring != F2.ring:
        raise DescriptorError("laws must share a ring")
    p, k = _field_char(F1.ring)
    N = min(F1.bound, F2.bound) if bound is None else bound
    try:
        h1, h2 = height(F1.truncate(N), p), height(F2.truncate(N), p)
        if _verdict_key(h1.verdict) != _verdict_key(h2.verdict):
            return NoneToBound(N, f"height mismatch: {h1.describe()} vs {h2.describe()}")
        heights_exact = isinstance(h1.verdict, ExactHeight)
    except TruncationTooSmall:
        heights_exact = False
    for d in range(1, max_ext_degree + 1):
        if d == 1:
            K, G1, G2 = F1.ring, F1.truncate(N), F2.truncate(N)
        else:
            K = extension_field(p, k * d)
            emb = _embedding(F1.ring, K)
            G1, G2 = base_change(F1.truncate(N), emb), base_change(F2.truncate(N), emb)
        phi = _search(G1, G2, K, p, N)
        if phi is not None:
            return SeriesHomomorphism(G1, G2, phi)
    if heights_exact:
        return NeedsExtension(max_ext_degree)
    return NoneToBound(N, f"no isomorphism over extensions of degree <= {max_ext_degree}")


def _verdict_key(v):
    return (v.kind, getattr(v, "n", None))


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _search(G1, G2, K, p, N):
    """Degree-by-degree depth-first search; returns phi or None."""
    elems = field_elements(K)
    units = [a for a in elems if K.unit_inverse(a) is not None]
    one = K.one
    units.sort(key=lambda a: a != one)
    x = TruncatedSeries.variable(K, XY, "x", N)
    y = TruncatedSeries.variable(K, XY, "y", N)

    def defect(coeffs, n):
        phi = TruncatedSeries(K, ("x",), n, coeffs, _trusted=True)
        lhs = substitute(phi, {"x": G1.F.truncate(n)})
        rhs = substitute(
            G2.F.truncate(n),
            {"x": substitute(phi, {"x": x.truncate(n)}), "y": substitute(phi, {"x": y.truncate(n)})},
        )
        return (lhs - rhs).homogeneous_part(n)

    def solve(coeffs, n):
        if n > N:
            return coeffs
        D = defect(coeffs, n)
        if _is_p_power(n, p):
            if D:
                return None
            choices = units if n == 1 else elems
            for b in choices:
                nxt = dict(coeffs)
                if not K.is_zero(b):
                    nxt[(n,)] = b
                found = solve(nxt, n + 1)
                if found is not None:
                    return found
            return None
        # b_n ((x+y)^n - x^n - y^n) = -D, a linear equation over the field
        from math import comb

        b = None
        for i in range(1, n):
            c = K.from_int(comb(n, i))
            if not K.is_zero(c):
                b = K.mul(K.neg(D.get((i, n - i), K.zero)), K.unit_inverse(c))
                break
        for i in range(1, n):
            lhs = K.mul(b, K.from_int(comb(n, i)))
            if lhs != K.neg(D.get((i, n - i), K.zero)):
                return None
        if any(e[0] == 0 or e[1] == 0 for e in D):
            return None
        nxt = dict(coeffs)
        if not K.is_zero(b):
            nxt[(n,)] = b
        return solve(nxt, n + 1)

    coeffs = solve({}, 1)
    if coeffs is None:
        return None
    return TruncatedSeries(K, ("x",), N, coeffs, _trusted=True)
