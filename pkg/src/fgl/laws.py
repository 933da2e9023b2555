"""One-dimensional formal group laws: construction, validation, n-series.

A law is a bivariate :class:`TruncatedSeries` ``F(x, y)`` that is unital,
commutative and associative up to its truncation bound.  Constructors are
described by small spec objects (:class:`Additive`, :class:`Honda`, ...) so a
law can be rebuilt from a JSON file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AxiomViolation, DescriptorError, NonIntegral, NotAUnit
from .numtheory import is_prime
from .rings import RingElement, as_ring, parse_raw, ring_label
from .rings.coefficients import RationalField
from .rings.polyring import PolyRing
from .series import (
    DEFAULT_BOUND,
    TruncatedSeries,
    inverse,
    partial_derivative,
    reversion,
    series_from_json,
    series_to_json,
    substitute,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")

# trivariate associativity checks on constructed laws stop at this degree;
# explicit laws are always checked to their full bound
ASSOCIATIVITY_CAP = 12


# ---------------------------------------------------------------------------
# constructor specs


@dataclass(frozen=True)
class Additive:
    kind = "additive"


@dataclass(frozen=True)
class Multiplicative:
    """F = x + y + b*x*y with b a unit (default 1)."""

    b: str = "1"
    kind = "multiplicative"


@dataclass(frozen=True)
class FromLog:
    """Law with the given logarithm; the ring must be a QQ-algebra."""

    log: TruncatedSeries
    kind = "fromlog"


@dataclass(frozen=True)
class Honda:
    """Height-n Honda law over GF(p): its p-series is x^(p^n)."""

    p: int
    n: int
    kind = "honda"


@dataclass(frozen=True)
class PTypicalAraki:
    """p-typical law with p-series  p x +_F v1 x^p +_F v2 x^(p^2) +_F ...

    ``v`` holds expressions in the target ring.
    """

    p: int
    v: tuple = field(default_factory=tuple)
    kind = "ptypical"


@dataclass(frozen=True)
class Elliptic:
    """Formal group of a Weierstrass curve at its point at infinity."""

    curve: object
    kind = "elliptic"


@dataclass(frozen=True)
class Explicit:
    series: TruncatedSeries
    kind = "explicit"


# ---------------------------------------------------------------------------


class FormalGroupLaw:
    """A validated formal group law F(x, y) over ``ring`` to total degree ``bound``."""

    def __init__(self, F: TruncatedSeries, spec=None, validate=True, assoc_bound=None):
        if F.vars != XY:
            F = F.rename(XY)
        self.F = F
        self.ring = F.ring
        self.bound = F.bound
        self.spec = spec
        if validate:
            validate_law(F, assoc_bound)

    def __call__(self, a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
        """Formal sum a +_F b of two series in the same variables."""
        return substitute(self.F, {"x": a, "y": b})

    add = __call__

    def coefficient(self, i, j) -> RingElement:
        return RingElement(self.ring, self.F.coefficient((i, j)))

    def x(self, bound=None, var="x"):
        return TruncatedSeries.variable(self.ring, (var,), var, self.bound if bound is None else bound)

    def truncate(self, bound):
        return FormalGroupLaw(self.F.truncate(bound), self.spec, validate=False)

    def __eq__(self, other):
        return isinstance(other, FormalGroupLaw) and self.F == other.F

    __hash__ = None

    def __str__(self):
        return str(self.F)

    def __repr__(self):
        return f"FormalGroupLaw({self.F}, ring={self.ring})"


# ---------------------------------------------------------------------------
# validation


def check_axioms(F: TruncatedSeries, assoc_bound=None):
    """First axiom failure as ``(axiom, exponent, coefficient)``, or None."""
    R = F.ring
    N = F.bound
    # unitality: F(x, 0) = x and F(0, y) = y
    for e, c in F.terms():
        if e[1] == 0 or e[0] == 0:
            want = R.one if sum(e) == 1 else R.zero
            if c != want:
                return "unitality", e, R.format(c)
    for deg1 in ((1, 0), (0, 1)):
        if N >= 1 and F.coeffs.get(deg1) != R.one and not R.is_zero_ring:
            return "unitality", deg1, R.format(F.coeffs.get(deg1, R.zero))
    # commutativity
    for e, c in F.terms():
        if F.coeffs.get((e[1], e[0]), R.zero) != c:
            return "commutativity", e, R.format(c)
    # associativity F(F(x,y),z) = F(x,F(y,z))
    M = N if assoc_bound is None else min(N, assoc_bound)
    if M >= 3:
        G = F.truncate(M)
        x = TruncatedSeries.variable(R, XYZ, "x", M)
        y = TruncatedSeries.variable(R, XYZ, "y", M)
        z = TruncatedSeries.variable(R, XYZ, "z", M)
        lhs = substitute(G, {"x": substitute(G, {"x": x, "y": y}), "y": z})
        rhs = substitute(G, {"x": x, "y": substitute(G, {"x": y, "y": z})})
        bad = lhs.first_difference(rhs)
        if bad is not None:
            diff = R.sub(lhs.coeffs.get(bad, R.zero), rhs.coeffs.get(bad, R.zero))
            return "associativity", bad, R.format(diff)
    return None


def validate_law(F: TruncatedSeries, assoc_bound=None):
    failure = check_axioms(F, assoc_bound)
    if failure is not None:
        axiom, exp, coeff = failure
        raise AxiomViolation(
            f"{axiom} fails at exponent {list(exp)} (coefficient {coeff})",
            axiom=axiom,
            exponent=exp,
            coefficient=coeff,
        )


# ---------------------------------------------------------------------------
# construction


def build_law(spec, ring, N: int = DEFAULT_BOUND) -> FormalGroupLaw:
    R = as_ring(ring)
    if N < 1:
        raise DescriptorError("truncation bound must be at least 1")
    if isinstance(spec, Additive):
        F = TruncatedSeries(R, XY, N, {(1, 0): R.one, (0, 1): R.one})
        return FormalGroupLaw(F, spec, assoc_bound=ASSOCIATIVITY_CAP)
    if isinstance(spec, Multiplicative):
        b = parse_raw(R, spec.b)
        if R.unit_inverse(b) is None:
            raise NotAUnit(f"multiplicative parameter {R.format(b)} is not a unit in {R}")
        F = TruncatedSeries(R, XY, N, {(1, 0): R.one, (0, 1): R.one, (1, 1): b})
        return FormalGroupLaw(F, spec, assoc_bound=ASSOCIATIVITY_CAP)
    if isinstance(spec, FromLog):
        return FormalGroupLaw(_law_from_log(spec.log, R, N), spec, assoc_bound=ASSOCIATIVITY_CAP)
    if isinstance(spec, Honda):
        if not is_prime(spec.p) or spec.n < 1:
            raise DescriptorError(f"Honda needs a prime p and n >= 1, got ({spec.p}, {spec.n})")
        if R.is_zero(R.from_int(spec.p)) is False:
            raise DescriptorError(f"the Honda law lives over GF({spec.p})-algebras; {spec.p} != 0 in {R}")
        v = ["0"] * (spec.n - 1) + ["1"]
        F = _araki_law(spec.p, v, R, N)
        return FormalGroupLaw(F, spec, assoc_bound=ASSOCIATIVITY_CAP)
    if isinstance(spec, PTypicalAraki):
        if not is_prime(spec.p):
            raise DescriptorError(f"p = {spec.p} is not prime")
        F = _araki_law(spec.p, list(spec.v), R, N)
        law = FormalGroupLaw(F, spec, assoc_bound=ASSOCIATIVITY_CAP)
        check_araki_property(law)
        return law
    if isinstance(spec, Elliptic):
        from .elliptic import formal_group

        curve = spec.curve
        if curve.ring != R:
            raise DescriptorError(f"curve is over {curve.ring}, law requested over {R}")
        return formal_group(curve, N)
    if isinstance(spec, Explicit):
        S = spec.series
        if S.ring != R:
            raise DescriptorError(f"series is over {S.ring}, law requested over {R}")
        return FormalGroupLaw(S.truncate(N).rename(XY), spec)
    raise DescriptorError(f"unknown law spec {spec!r}")


def _law_from_log(log, R, N):
    if log.ring != R:
        raise DescriptorError(f"logarithm is over {log.ring}, law requested over {R}")
    if log.nvars != 1:
        raise DescriptorError("a logarithm is a univariate series")
    if R.unit_inverse(R.from_int(2)) is None or not _is_q_algebra(R):
        raise DescriptorError(f"{R} is not a QQ-algebra; FromLog needs one")
    if not R.is_zero(log.constant_term()) or R.unit_inverse(log.coefficient((1,))) is None:
        raise DescriptorError("a logarithm must be x + higher terms (unit linear coefficient)")
    log = log.truncate(N).rename(("x",))
    exp = reversion(log)
    return exp_of_sum(exp, log, R, N)


def exp_of_sum(exp, log, R, N):
    """exp(log(x) + log(y)) as a bivariate series."""
    x = TruncatedSeries.variable(R, XY, "x", N)
    y = TruncatedSeries.variable(R, XY, "y", N)
    s = substitute(log, {"x": x}) + substitute(log, {"x": y})
    return substitute(exp, {"x": s})


def _is_q_algebra(R):
    C = R.coeff if isinstance(R, PolyRing) else R
    return isinstance(C, RationalField) or C.is_zero_ring


def araki_log_coefficients(p, v, R):
    """l_0 .. l_k of the p-typical logarithm sum l_n x^(p^n).

    l_0 = 1 and l_n (p - p^(p^n)) = sum_{i<n} l_i v_{n-i}^(p^i), computed in R
    (a QQ-algebra whose ``v`` are raw elements).
    """
    ls = [R.one]
    for n in range(1, len(v) + 1):
        acc = R.zero
        for i in range(n):
            acc = R.add(acc, R.mul(ls[i], R.pow(v[n - i - 1], p**i)))
        ls.append(R.mul(acc, R.coerce(Fraction(1, p - p ** (p**n)))))
    return ls


def _araki_law(p, v_exprs, R, N):
    """Build over QQ[w...], check p-integrality, then specialize into R."""
    k = 0
    while p ** (k + 1) <= N:
        k += 1
    v_exprs = [str(e).strip() for e in v_exprs][:k]
    symbolic = {}
    for i, e in enumerate(v_exprs):
        if not _is_int_literal(e):
            symbolic[i] = f"w{i + 1}"
    Q = PolyRing(RationalField(), tuple(symbolic.values())) if symbolic else RationalField()
    vs = []
    for i in range(k):
        if i >= len(v_exprs):
            vs.append(Q.zero)
        elif i in symbolic:
            vs.append(Q.gen(symbolic[i]))
        else:
            vs.append(Q.from_int(int(v_exprs[i])))
    ls = araki_log_coefficients(p, vs, Q)
    log = TruncatedSeries(Q, ("x",), N, {(p**n,): c for n, c in enumerate(ls) if p**n <= N})
    FQ = exp_of_sum(reversion(log), log, Q, N)
    images = {symbolic[i]: parse_raw(R, v_exprs[i]) for i in symbolic}
    out = {}
    for e, c in FQ.coeffs.items():
        val = _specialize(Q, c, images, R, p, sum(e))
        if not R.is_zero(val):
            out[e] = val
    return TruncatedSeries(R, XY, N, out, _trusted=True)


def _is_int_literal(text):
    t = text.replace(" ", "")
    if t.startswith(("-", "+")):
        t = t[1:]
    return t.isdigit()


def _map_fraction(R, q: Fraction, p, degree):
    if q.denominator % p == 0:
        raise NonIntegral(f"coefficient {q} in degree {degree} is not {p}-integral", degree=degree)
    try:
        return R.coerce(q)
    except NotAUnit as exc:
        raise NonIntegral(
            f"coefficient {q} in degree {degree} has no image in {R}: {exc}", degree=degree
        ) from exc


def _specialize(Q, c, images, R, p, degree):
    if not isinstance(Q, PolyRing):
        return _map_fraction(R, c, p, degree)
    total = R.zero
    for e, q in c.items():
        term = _map_fraction(R, q, p, degree)
        for name, k in zip(Q.names, e):
            if k:
                term = R.mul(term, R.pow(images[name], k))
        total = R.add(total, term)
    return total


# ---------------------------------------------------------------------------
# group structure


def formal_inverse(law: FormalGroupLaw) -> TruncatedSeries:
    """iota(x) with F(x, iota(x)) = 0, by Newton iteration."""
    N = law.bound
    x = law.x()
    Fy = partial_derivative(law.F, "y")
    iota = -x
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        it = iota.with_coeffs(iota.coeffs, bound=prec)
        xs = x.truncate(prec)
        val = substitute(law.F.truncate(prec), {"x": xs, "y": it})
        # val has no terms below degree 2, so F_y is only needed to degree prec - 1
        der = substitute(Fy.truncate(prec - 1), {"x": xs.truncate(prec - 1), "y": it.truncate(prec - 1)})
        der = der.with_coeffs(der.coeffs, bound=prec)
        iota = it - val * inverse(der)
    return iota.truncate(N)


def n_series(law: FormalGroupLaw, n: int) -> TruncatedSeries:
    """[n](x), by double-and-add on [m+k] = F([m], [k])."""
    x = law.x()
    if n == 0:
        return TruncatedSeries.zero(law.ring, ("x",), law.bound)
    if n < 0:
        pos = n_series(law, -n)
        return substitute(formal_inverse(law), {"x": pos})
    result = None
    for bit in bin(n)[2:]:
        if result is not None:
            result = law(result, result)
        if bit == "1":
            result = x if result is None else law(result, x)
    return result


def p_series(law: FormalGroupLaw, p: int) -> TruncatedSeries:
    return n_series(law, p)


def base_change(law: FormalGroupLaw, h) -> FormalGroupLaw:
    """Coefficient-wise image of the law under the ring map ``h``."""
    F = law.F.map_coefficients(h.apply_raw, h.dst)
    return FormalGroupLaw(F, law.spec, assoc_bound=ASSOCIATIVITY_CAP)


def araki_sum(law: FormalGroupLaw, p: int, v_exprs) -> TruncatedSeries:
    """p x +_F v1 x^p +_F v2 x^(p^2) +_F ... to the law's bound."""
    R = law.ring
    N = law.bound
    total = TruncatedSeries.from_terms(R, ("x",), N, {(1,): p})
    for i, e in enumerate(v_exprs, start=1):
        if p**i > N:
            break
        term = TruncatedSeries(R, ("x",), N, {(p**i,): parse_raw(R, e)})
        total = law(total, term)
    return total


def check_araki_property(law: FormalGroupLaw):
    spec = law.spec
    lhs = p_series(law, spec.p)
    rhs = araki_sum(law, spec.p, spec.v)
    bad = lhs.first_difference(rhs)
    if bad is not None:
        raise AxiomViolation(
            f"p-series differs from the Araki sum at x^{bad[0]}",
            axiom="araki",
            exponent=bad,
            coefficient=law.ring.format(law.ring.sub(lhs.coeffs.get(bad, law.ring.zero), rhs.coeffs.get(bad, law.ring.zero))),
        )


# ---------------------------------------------------------------------------
# JSON


def spec_to_json(spec) -> dict:
    if isinstance(spec, Additive):
        return {"kind": "additive"}
    if isinstance(spec, Multiplicative):
        return {"kind": "multiplicative", "b": spec.b}
    if isinstance(spec, Honda):
        return {"kind": "honda", "p": spec.p, "n": spec.n}
    if isinstance(spec, PTypicalAraki):
        return {"kind": "ptypical", "p": spec.p, "v": list(spec.v)}
    if isinstance(spec, FromLog):
        return {"kind": "fromlog", "series": series_to_json(spec.log)}
    if isinstance(spec, Explicit):
        return {"kind": "explicit", "series": series_to_json(spec.series)}
    if isinstance(spec, Elliptic):
        from .elliptic import curve_to_json

        return {"kind": "elliptic", "curve": curve_to_json(spec.curve)}
    raise DescriptorError(f"cannot serialize {spec!r}")


def spec_from_json(d: dict, ring, bound: int):
    if not isinstance(d, dict) or "kind" not in d:
        raise DescriptorError("law spec must be an object with a 'kind'")
    kind = d["kind"]
    try:
        if kind == "additive":
            return Additive()
        if kind == "multiplicative":
            return Multiplicative(str(d.get("b", "1")))
        if kind == "honda":
            return Honda(int(d["p"]), int(d["n"]))
        if kind == "ptypical":
            return PTypicalAraki(int(d["p"]), tuple(str(v) for v in d.get("v", [])))
        if kind == "fromlog":
            return FromLog(series_from_json(ring, ("x",), bound, d["series"]))
        if kind == "explicit":
            return Explicit(series_from_json(ring, XY, bound, d["series"]))
        if kind == "elliptic":
            from .elliptic import curve_from_json

            c = dict(d["curve"])
            c.setdefault("ring", None)
            return Elliptic(curve_from_json(c, ring))
    except KeyError as exc:
        raise DescriptorError(f"law spec of kind {kind!r} is missing field {exc}") from exc
    raise DescriptorError(f"unknown law kind {kind!r}")


def law_to_json(law: FormalGroupLaw) -> dict:
    return {
        "ring": ring_label(law.ring),
        "bound": law.bound,
        "series": series_to_json(law.F),
    }
