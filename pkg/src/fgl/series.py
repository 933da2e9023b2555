"""Truncated multivariate power series over any coefficient ring.

A series stores a sparse map from exponent tuples to nonzero raw ring values
and is exact in every total degree <= ``bound``.  Binary operations truncate
to the smaller bound.  Over ZZ/m with a machine-size modulus the products and
univariate compositions go through :mod:`fgl.kernels`.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .errors import InexactDivision, NotAUnit, RingMismatch, TruncationTooSmall
from .rings import RingElement, as_ring, parse_raw
from .rings.coefficients import IntegerRing, LocalizedIntegers
from .rings.polyring import PolyRing

DEFAULT_BOUND = 24


class ZeroToBound:
    """Returned by :func:`leading_term_in_p_powers` for a series that vanishes to its bound."""

    __slots__ = ("bound",)

    def __init__(self, bound):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, ZeroToBound) and other.bound == self.bound

    def __repr__(self):
        return f"ZeroToBound({self.bound})"


class TruncatedSeries:
    __slots__ = ("ring", "vars", "bound", "coeffs")

    def __init__(self, ring, vars, bound, coeffs=None, _trusted=False):
        ring = as_ring(ring)
        vars = tuple(vars)
        if not vars:
            raise ValueError("a series needs at least one variable")
        if bound < 0:
            raise ValueError("truncation bound must be >= 0")
        if not _trusted:
            k = len(vars)
            clean = {}
            for e, c in (coeffs or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != k or min(e) < 0:
                    raise ValueError(f"bad exponent {e} for variables {vars}")
                if sum(e) <= bound and not ring.is_zero(c):
                    clean[e] = c
            coeffs = clean
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring, vars, bound):
        return cls(ring, vars, bound, {}, _trusted=True)

    @classmethod
    def constant(cls, ring, vars, bound, value=1):
        ring = as_ring(ring)
        raw = ring.from_int(value) if isinstance(value, int) else _raw(ring, value)
        return cls(ring, vars, bound, {(0,) * len(tuple(vars)): raw})

    @classmethod
    def variable(cls, ring, vars, name, bound):
        ring = as_ring(ring)
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise KeyError(name)
        return cls(ring, vars, bound, {e: ring.one})

    @classmethod
    def from_terms(cls, ring, vars, bound, terms):
        """Build from ``{exponent: int | str | RingElement}``."""
        ring = as_ring(ring)
        return cls(ring, vars, bound, {tuple(e): _raw(ring, c) for e, c in terms.items()})

    @classmethod
    def univariate(cls, ring, coeffs, bound, var="x"):
        """Series sum(coeffs[i] x^i) from a list."""
        ring = as_ring(ring)
        return cls(ring, (var,), bound, {(i,): _raw(ring, c) for i, c in enumerate(coeffs)})

    # -- basic queries ------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, exp):
        """Raw coefficient at ``exp`` (zero when absent)."""
        exp = tuple(exp)
        if sum(exp) > self.bound:
            raise TruncationTooSmall(
                f"degree {sum(exp)} is beyond the truncation bound {self.bound}", required=sum(exp)
            )
        return self.coeffs.get(exp, self.ring.zero)

    def __getitem__(self, exp):
        if isinstance(exp, int):
            exp = (exp,)
        return RingElement(self.ring, self.coefficient(exp))

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.ring.zero)

    def valuation(self):
        """Lowest total degree with a nonzero coefficient (None for zero)."""
        return min((sum(e) for e in self.coeffs), default=None)

    def truncate(self, bound):
        if bound >= self.bound:
            return self
        return TruncatedSeries(
            self.ring,
            self.vars,
            bound,
            {e: c for e, c in self.coeffs.items() if sum(e) <= bound},
            _trusted=True,
        )

    def homogeneous_part(self, degree):
        return {e: c for e, c in self.coeffs.items() if sum(e) == degree}

    def terms(self):
        """(exponent, raw) pairs in graded-lex order: degree ascending, x before y."""
        return sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def with_coeffs(self, coeffs, bound=None):
        return TruncatedSeries(
            self.ring, self.vars, self.bound if bound is None else bound, coeffs, _trusted=True
        )

    def map_coefficients(self, fn, ring):
        """Coefficient-wise image under ``fn`` (raw -> raw in ``ring``)."""
        out = {}
        for e, c in self.coeffs.items():
            v = fn(c)
            if not ring.is_zero(v):
                out[e] = v
        return TruncatedSeries(ring, self.vars, self.bound, out, _trusted=True)

    def rename(self, vars):
        return TruncatedSeries(self.ring, vars, self.bound, self.coeffs, _trusted=True)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"series over {self.ring} and {other.ring}")
        if other.vars != self.vars:
            raise RingMismatch(f"series in {self.vars} and {other.vars}")

    def _coerce_operand(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, RingElement, Fraction)):
            return TruncatedSeries.constant(self.ring, self.vars, self.bound, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        N = min(self.bound, other.bound)
        R = self.ring
        out = {e: c for e, c in self.coeffs.items() if sum(e) <= N}
        for e, c in other.coeffs.items():
            if sum(e) > N:
                continue
            if e in out:
                s = R.add(out[e], c)
                if R.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return TruncatedSeries(R, self.vars, N, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return self.with_coeffs({e: R.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, RingElement, Fraction)):
            return self.scale(_raw(self.ring, other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return _mul(self, other, min(self.bound, other.bound))

    def __rmul__(self, other):
        if isinstance(other, (int, RingElement, Fraction)):
            return self.scale(_raw(self.ring, other))
        return NotImplemented

    def scale(self, raw):
        R = self.ring
        if R.is_zero(raw):
            return self.with_coeffs({})
        out = {}
        for e, c in self.coeffs.items():
            v = R.mul(c, raw)
            if not R.is_zero(v):
                out[e] = v
        return self.with_coeffs(out)

    def __pow__(self, n):
        if n < 0:
            return inverse(self) ** (-n)
        result = TruncatedSeries.constant(self.ring, self.vars, self.bound, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exp):
        """Multiply by the monomial with exponent ``exp``."""
        exp = tuple(exp)
        out = {}
        for e, c in self.coeffs.items():
            ne = tuple(a + b for a, b in zip(e, exp))
            if sum(ne) <= self.bound:
                out[ne] = c
        return self.with_coeffs(out)

    def __eq__(self, other):
        """Equality to the common truncation bound."""
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, RingElement)):
                other = self._coerce_operand(other)
            else:
                return NotImplemented
        if other.ring != self.ring or other.vars != self.vars:
            return False
        N = min(self.bound, other.bound)
        a = {e: c for e, c in self.coeffs.items() if sum(e) <= N}
        b = {e: c for e, c in other.coeffs.items() if sum(e) <= N}
        return a == b

    __hash__ = None

    def first_difference(self, other):
        """Smallest graded-lex exponent where two series differ, or None."""
        N = min(self.bound, other.bound)
        keys = {e for e in self.coeffs if sum(e) <= N} | {e for e in other.coeffs if sum(e) <= N}
        for e in sorted(keys, key=lambda e: (sum(e), tuple(-x for x in e))):
            if self.coeffs.get(e, self.ring.zero) != other.coeffs.get(e, other.ring.zero):
                return e
        return None

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return f"O({_deg_symbol(self)}^{self.bound + 1})"
        out = ""
        for e, c in self.terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = self.ring.format(c)
            sign = "+"
            if cs.startswith("-") and " " not in cs:
                sign, cs = "-", cs[1:]
            elif " " in cs:
                cs = f"({cs})"
            term = cs if not mono else (mono if cs == "1" else f"{cs}*{mono}")
            if not out:
                out = term if sign == "+" else "-" + term
            else:
                out += f" {sign} {term}"
        return out + f" + O({_deg_symbol(self)}^{self.bound + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self}, ring={self.ring})"


def _deg_symbol(f):
    return f.vars[0] if f.nvars == 1 else "deg"


def _raw(ring, value):
    if isinstance(value, RingElement):
        if value.ring != ring:
            raise RingMismatch(f"element of {value.ring} used in a series over {ring}")
        return value.value
    if isinstance(value, int):
        return ring.from_int(value)
    if isinstance(value, Fraction):
        return ring.coerce(value)
    if isinstance(value, str):
        return parse_raw(ring, value)
    return value


# ---------------------------------------------------------------------------
# multiplication


def _fast_modulus(ring, nvars, bound):
    m = getattr(ring, "machine_modulus", None)
    if m is None:
        return None
    if (bound + 1) ** nvars > kernels.MAX_DENSE_SIZE:
        return None
    return m


def _pack(f, N):
    k = f.nvars
    if not f.coeffs:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z
    exps = np.array(list(f.coeffs.keys()), dtype=np.int64).reshape(-1, k)
    coeffs = np.array(list(f.coeffs.values()), dtype=np.int64)
    weights = (N + 1) ** np.arange(k, dtype=np.int64)
    idx = exps @ weights
    deg = exps.sum(axis=1)
    keep = deg <= N
    idx, deg, coeffs = idx[keep], deg[keep], coeffs[keep]
    order = np.argsort(deg, kind="stable")
    return idx[order], deg[order], coeffs[order]


def _unpack(dense, k, N):
    nz = np.flatnonzero(dense)
    vals = dense[nz].tolist()
    if k == 1:
        return {(int(i),): v for i, v in zip(nz.tolist(), vals)}
    cols = []
    rest = nz
    for _ in range(k):
        cols.append((rest % (N + 1)).tolist())
        rest = rest // (N + 1)
    return {tuple(e): v for e, v in zip(zip(*cols), vals)}


def _mul(f, g, N):
    R = f.ring
    if not f.coeffs or not g.coeffs:
        return TruncatedSeries(R, f.vars, N, {}, _trusted=True)
    m = _fast_modulus(R, f.nvars, N)
    if m is not None:
        a = _pack(f, N)
        b = _pack(g, N)
        if len(a[0]) > len(b[0]):
            a, b = b, a
        dense = kernels.mul_packed(*a, *b, N, (N + 1) ** f.nvars, m)
        return TruncatedSeries(R, f.vars, N, _unpack(dense, f.nvars, N), _trusted=True)
    return TruncatedSeries(R, f.vars, N, _mul_generic(R, f.coeffs, g.coeffs, N), _trusted=True)


def _mul_generic(R, a, b, N):
    if len(a) > len(b):
        a, b = b, a
    bl = sorted(((sum(e), e, c) for e, c in b.items() if sum(e) <= N), key=lambda t: t[0])
    out = {}
    add, mul = R.add, R.mul
    for ea, ca in a.items():
        da = sum(ea)
        lim = N - da
        if lim < 0:
            continue
        for db, eb, cb in bl:
            if db > lim:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            v = mul(ca, cb)
            if e in out:
                out[e] = add(out[e], v)
            else:
                out[e] = v
    return {e: c for e, c in out.items() if not R.is_zero(c)}


# ---------------------------------------------------------------------------
# named operations


def series_arith(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def coefficient_of(f: TruncatedSeries, exp) -> RingElement:
    return RingElement(f.ring, f.coefficient(exp))


def inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be a unit."""
    R = f.ring
    c0 = f.constant_term()
    inv0 = R.unit_inverse(c0)
    if inv0 is None:
        raise NotAUnit(f"constant term {R.format(c0)} is not a unit")
    N = f.bound
    g = TruncatedSeries(R, f.vars, N, {(0,) * f.nvars: inv0})
    prec = 1
    two = TruncatedSeries.constant(R, f.vars, N, 2)
    while prec <= N:
        prec = min(2 * prec, N + 1)
        fp = f.truncate(prec - 1)
        gp = g.with_coeffs(g.coeffs, bound=prec - 1)
        g = gp * (two.truncate(prec - 1) - fp * gp)
    return TruncatedSeries(R, f.vars, N, g.coeffs, _trusted=True)


def partial_derivative(f: TruncatedSeries, var: str) -> TruncatedSeries:
    i = f.vars.index(var)
    R = f.ring
    out = {}
    for e, c in f.coeffs.items():
        k = e[i]
        if k == 0:
            continue
        v = R.scale_int(c, k)
        if not R.is_zero(v):
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = v
    return TruncatedSeries(R, f.vars, max(f.bound - 1, 0), out, _trusted=True)


def divide_by_int(R, c, n):
    """c / n in R when it exists uniquely; None otherwise."""
    inv = R.unit_inverse(R.from_int(n))
    if inv is not None:
        return R.mul(c, inv)
    C = R.coeff if isinstance(R, PolyRing) else R
    if isinstance(C, (IntegerRing, LocalizedIntegers)):
        if isinstance(R, PolyRing):
            out = {}
            for e, a in c.items():
                q = _div_coeff(C, a, n)
                if q is None:
                    return None
                out[e] = q
            return out
        return _div_coeff(C, c, n)
    return None


def _div_coeff(C, a, n):
    q = Fraction(a) / n
    try:
        return C.from_fraction(q)
    except NotAUnit:
        return None


def formal_integral(f: TruncatedSeries) -> TruncatedSeries:
    if f.nvars != 1:
        raise ValueError("formal_integral needs a univariate series")
    R = f.ring
    out = {}
    for (k,), c in sorted(f.coeffs.items()):
        q = divide_by_int(R, c, k + 1)
        if q is None:
            raise InexactDivision(
                f"coefficient {R.format(c)} of x^{k} is not divisible by {k + 1} in {R}",
                degree=k + 1,
            )
        if not R.is_zero(q):
            out[(k + 1,)] = q
    return TruncatedSeries(R, f.vars, f.bound + 1, out, _trusted=True)


def substitute(f: TruncatedSeries, images: dict) -> TruncatedSeries:
    """f(img_1, ..., img_k): every variable of f is replaced by a series.

    All images share one ring and variable list and have zero constant term.
    A variable of f without an image is kept when the target has a variable
    of the same name.
    """
    imgs = []
    target = None
    for v in f.vars:
        img = images.get(v)
        if img is not None:
            if target is None:
                target = img
            imgs.append(img)
        else:
            imgs.append(None)
    if target is None:
        raise ValueError("substitute needs at least one image")
    for idx, v in enumerate(f.vars):
        if imgs[idx] is None:
            if v not in target.vars:
                raise ValueError(f"no image for variable {v}")
            imgs[idx] = TruncatedSeries.variable(target.ring, target.vars, v, target.bound)
    for img in imgs:
        target._check(img)
        if img.ring != f.ring:
            raise RingMismatch(f"image over {img.ring}, series over {f.ring}")
        if not img.ring.is_zero(img.constant_term()):
            raise ValueError("substitution image has a nonzero constant term")
    N = min([f.bound] + [img.bound for img in imgs])
    imgs = [img.truncate(N) for img in imgs]
    R = f.ring
    if target.nvars == 1:
        m = _fast_modulus(R, 1, N)
        if m is not None and f.coeffs:
            return _compose_univariate_fast(f, imgs, N, m, target.vars)
    terms = [(e, c) for e, c in f.coeffs.items() if _min_degree_ok(e, imgs, N)]
    powers = [[TruncatedSeries.constant(R, target.vars, N, 1), img] for img in imgs]
    zero = TruncatedSeries(R, target.vars, N, {}, _trusted=True)
    return _horner(R, terms, imgs, powers, 0, zero)


def _min_degree_ok(e, imgs, N):
    total = 0
    for k, img in zip(e, imgs):
        if k:
            v = img.valuation()
            if v is None:
                return False
            total += k * v
    return total <= N


def _get_power(img, powers, k):
    """img^k from a cache filled sequentially (each step multiplies by img)."""
    while len(powers) <= k:
        powers.append(powers[-1] * img)
    return powers[k]


def _horner(R, terms, imgs, powers, var, zero):
    """Sum of c * prod img_v^e_v over ``terms``.

    The last variable is handled as a linear combination of cached powers;
    outer variables use Horner's rule so only products by the image occur.
    """
    if not terms:
        return zero
    if var == len(imgs) - 1:
        acc = {}
        add, mul = R.add, R.mul
        for e, c in terms:
            p = _get_power(imgs[var], powers[var], e[var])
            for te, tc in p.coeffs.items():
                v = mul(c, tc)
                acc[te] = add(acc[te], v) if te in acc else v
        return zero.with_coeffs({e: c for e, c in acc.items() if not R.is_zero(c)})
    groups = {}
    for e, c in terms:
        groups.setdefault(e[var], []).append((e, c))
    acc = None
    prev = None
    for k in sorted(groups, reverse=True):
        inner = _horner(R, groups[k], imgs, powers, var + 1, zero)
        if acc is None:
            acc = inner
        else:
            acc = acc * _get_power(imgs[var], powers[var], prev - k) + inner
        prev = k
    if prev:
        acc = acc * _get_power(imgs[var], powers[var], prev)
    return acc


def _compose_univariate_fast(f, imgs, N, m, tvars):
    exps = np.array(list(f.coeffs.keys()), dtype=np.int64).reshape(-1, f.nvars)
    cs = np.array(list(f.coeffs.values()), dtype=np.int64)
    dense = np.zeros((len(imgs), N + 1), dtype=np.int64)
    for i, img in enumerate(imgs):
        for (d,), c in img.coeffs.items():
            dense[i, d] = c
    out = kernels.compose_univariate(exps, cs, dense, N, m)
    return TruncatedSeries(f.ring, tvars, N, _unpack(np.asarray(out), 1, N), _trusted=True)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g) for univariate f."""
    return substitute(f, {f.vars[0]: g})


def reversion(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g with f(g(x)) = x, solved one degree at a time."""
    if f.nvars != 1:
        raise ValueError("reversion needs a univariate series")
    R = f.ring
    if not R.is_zero(f.constant_term()):
        raise ValueError("reversion needs f(0) = 0")
    if f.bound < 1:
        return f
    a1 = f.coefficient((1,))
    inv = R.unit_inverse(a1)
    if inv is None:
        raise NotAUnit(f"linear coefficient {R.format(a1)} is not a unit (is_unit failed)")
    N = f.bound
    g = {(1,): inv}
    for d in range(2, N + 1):
        gs = TruncatedSeries(R, f.vars, d, g, _trusted=True)
        c = compose(f.truncate(d), gs).coefficient((d,))
        if not R.is_zero(c):
            g[(d,)] = R.neg(R.mul(c, inv))
    return TruncatedSeries(R, f.vars, N, g, _trusted=True)


def leading_term_in_p_powers(f: TruncatedSeries, p: int):
    """(n, RingElement u) with f = u x^(p^n) + ..., or ZeroToBound(N)."""
    if f.nvars != 1:
        raise ValueError("leading_term_in_p_powers needs a univariate series")
    if not f.coeffs:
        return ZeroToBound(f.bound)
    d = min(e[0] for e in f.coeffs)
    n, q = 0, 1
    while q < d:
        q *= p
        n += 1
    if q != d:
        raise ValueError(
            f"nonzero coefficient at x^{d}, which is not a power of {p}: malformed p-series"
        )
    return n, RingElement(f.ring, f.coeffs[(d,)])


# ---------------------------------------------------------------------------
# serialization


def series_to_json(f: TruncatedSeries) -> list:
    return [{"exp": list(e), "coeff": f.ring.format(c)} for e, c in f.terms()]


def series_from_json(ring, vars, bound, items) -> TruncatedSeries:
    ring = as_ring(ring)
    terms = {}
    for item in items:
        e = tuple(item["exp"])
        c = parse_raw(ring, item["coeff"])
        if e in terms:
            c = ring.add(terms[e], c)
        terms[e] = c
    return TruncatedSeries(ring, vars, bound, terms)
