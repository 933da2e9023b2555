import importlib.util
import os
import random
import subprocess
import sys

import numpy as np
import pytest
from conftest import gf

from fgl import kernels
from fgl.errors import InexactDivision, NotAUnit, RingMismatch, TruncationTooSmall
from fgl.rings import Integers, build_ring
from fgl.series import (
    TruncatedSeries,
    ZeroToBound,
    coefficient_of,
    compose,
    formal_integral,
    inverse,
    leading_term_in_p_powers,
    partial_derivative,
    reversion,
    series_arith,
    series_from_json,
    series_to_json,
    substitute,
)

XY = ("x", "y")


def uni(R, coeffs, N):
    return TruncatedSeries.univariate(R, coeffs, N)


def xy(R, N):
    return TruncatedSeries.variable(R, XY, "x", N), TruncatedSeries.variable(R, XY, "y", N)


def test_arith_examples(ZZ):
    x, y = xy(ZZ, 4)
    assert series_arith(x + y, x - y, "mul") == x * x - y * y
    x2, y2 = xy(gf(2), 4)
    assert (x2 + y2) ** 2 == x2 * x2 + y2 * y2
    assert uni(ZZ, [1, 1], 3) * uni(ZZ, [1, -1, 1, -1], 3) == TruncatedSeries.constant(ZZ, ("x",), 3)


def test_bound_is_minimum_and_no_zero_coefficients(ZZ):
    f = uni(ZZ, [0, 1, 2], 5)
    g = uni(ZZ, [0, 1, -2], 3)
    h = f + g
    assert h.bound == 3
    assert (f * g).bound == 3
    assert all(c != 0 for c in (f - f).coeffs.values())
    assert (f - f).is_zero()


def test_mismatch_raises(ZZ, QQ):
    with pytest.raises(RingMismatch):
        series_arith(uni(ZZ, [1], 3), uni(QQ, [1], 3), "add")
    with pytest.raises(RingMismatch):
        series_arith(uni(ZZ, [1], 3), TruncatedSeries.constant(ZZ, XY, 3), "add")


def test_substitute_examples(ZZ):
    x, y = xy(ZZ, 4)
    f = TruncatedSeries.from_terms(ZZ, ("x",), 4, {(2,): 1})
    assert substitute(f, {"x": x + y}) == x * x + 2 * x * y + y * y
    g = uni(ZZ, [0, 3, 1, 4], 4)
    assert substitute(uni(ZZ, [0, 1], 4), {"x": g}) == g
    geo = uni(ZZ, [0, 1, 1, 1], 3)
    assert compose(geo, uni(ZZ, [0, 1, 1], 3)) == uni(ZZ, [0, 1, 2, 3], 3)


def test_substitute_rejects_constant_term(ZZ):
    with pytest.raises(ValueError):
        substitute(uni(ZZ, [0, 1], 3), {"x": uni(ZZ, [1, 1], 3)})


def test_reversion_examples(ZZ):
    g = reversion(uni(ZZ, [0, 1, 1], 5))
    assert g == uni(ZZ, [0, 1, -1, 2, -5, 14], 5)
    assert reversion(uni(ZZ, [0, 1], 5)) == uni(ZZ, [0, 1], 5)
    F3 = gf(3)
    assert reversion(uni(F3, [0, 2], 5)) == uni(F3, [0, 2], 5)
    with pytest.raises(NotAUnit):
        reversion(uni(ZZ, [0, 2, 1], 4))


def test_partial_derivative_examples(ZZ):
    x, y = xy(ZZ, 5)
    F = x + y + x * y
    assert partial_derivative(F, "y") == 1 + x
    assert partial_derivative(y**3, "x").is_zero()
    assert partial_derivative(x**3 * y, "x") == 3 * x * x * y
    assert partial_derivative(F, "y").bound == 4


def test_formal_integral_examples(ZZ, QQ):
    from fractions import Fraction

    assert formal_integral(uni(QQ, [1], 3)) == uni(QQ, [0, 1], 4)
    expected = uni(QQ, [0, 1, Fraction(-1, 2), Fraction(1, 3)], 3)
    assert formal_integral(uni(QQ, [1, -1, 1], 3)).truncate(3) == expected
    with pytest.raises(InexactDivision) as exc:
        formal_integral(uni(ZZ, [0, 1], 3))
    assert exc.value.degree == 2


def test_leading_term_examples():
    F3 = gf(3)
    f = TruncatedSeries.from_terms(F3, ("x",), 30, {(9,): 3, (27,): 1})
    n, u = leading_term_in_p_powers(f, 3)
    assert (n, u) == (3, 1)
    F2 = gf(2)
    assert leading_term_in_p_powers(TruncatedSeries.from_terms(F2, ("x",), 8, {(2,): 1}), 2) == (1, 1)
    assert leading_term_in_p_powers(TruncatedSeries.zero(F3, ("x",), 30), 3) == ZeroToBound(30)
    with pytest.raises(ValueError):
        leading_term_in_p_powers(TruncatedSeries.from_terms(F3, ("x",), 30, {(4,): 1}), 3)


def test_coefficient_of_beyond_bound(ZZ):
    f = uni(ZZ, [0, 1, 2], 3)
    assert coefficient_of(f, (2,)) == 2
    assert coefficient_of(f, (3,)) == 0
    with pytest.raises(TruncationTooSmall):
        coefficient_of(f, (4,))


def test_serialization_order_and_roundtrip(ZZ):
    x, y = xy(ZZ, 4)
    F = x + y + 2 * x * y - x * x * y
    data = series_to_json(F)
    assert [d["exp"] for d in data] == [[1, 0], [0, 1], [1, 1], [2, 1]]
    assert series_from_json(ZZ, XY, 4, data) == F


def test_printing(ZZ):
    assert str(uni(ZZ, [0, 1, -1], 3)) == "x - x^2 + O(x^4)"


# ---------------------------------------------------------------------------
# properties


def random_series(R, vars, N, rng, constant=False, lo=-3, hi=3):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        e = tuple(rng.randint(0, N) for _ in vars)
        if sum(e) <= N and (constant or sum(e) > 0):
            terms[e] = rng.randint(lo, hi)
    return TruncatedSeries.from_terms(R, vars, N, terms)


@pytest.mark.parametrize("R", [build_ring(Integers()), gf(5)], ids=str)
def test_composition_is_associative(R):
    rng = random.Random(3)
    for _ in range(20):
        f, g, h = (random_series(R, ("x",), 6, rng) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


@pytest.mark.parametrize("R", [build_ring(Integers()), gf(7)], ids=str)
def test_reversion_roundtrip(R):
    rng = random.Random(5)
    for _ in range(20):
        f = random_series(R, ("x",), 7, rng) + TruncatedSeries.variable(R, ("x",), "x", 7)
        if R.unit_inverse(f.coefficient((1,))) is None:
            continue
        x = TruncatedSeries.variable(R, ("x",), "x", 7)
        g = reversion(f)
        assert compose(f, g) == x and compose(g, f) == x


def test_leibniz_rule(ZZ):
    rng = random.Random(9)
    for _ in range(20):
        f, g = (random_series(ZZ, XY, 6, rng, constant=True) for _ in range(2))
        for v in XY:
            lhs = partial_derivative(f * g, v)
            rhs = partial_derivative(f, v) * g + f * partial_derivative(g, v)
            assert lhs == rhs


def test_integral_then_derivative(QQ):
    rng = random.Random(13)
    for _ in range(20):
        f = random_series(QQ, ("x",), 8, rng)
        assert partial_derivative(formal_integral(f), "x") == f


def test_inverse(ZZ):
    rng = random.Random(17)
    for _ in range(10):
        f = random_series(ZZ, XY, 6, rng) + 1
        assert f * inverse(f) == TruncatedSeries.constant(ZZ, XY, 6)


# ---------------------------------------------------------------------------
# compiled and pure-Python kernels


@pytest.fixture(params=["python", "cython"])
def backend(request):
    try:
        prev = kernels.use(request.param)
    except ImportError:
        pytest.skip("compiled kernels not built")
    yield request.param
    kernels.use(prev)


def test_backends_agree_on_products_and_compositions(backend):
    rng = random.Random(21)
    for p in (2, 13, 65537):
        R = gf(p)
        for _ in range(5):
            f = random_series(R, XY, 9, rng, constant=True, lo=0, hi=p - 1)
            g = random_series(R, XY, 9, rng, constant=True, lo=0, hi=p - 1)
            ref = TruncatedSeries(R, XY, 9, _generic_product(R, f, g))
            assert f * g == ref
            a = random_series(R, ("x",), 9, rng, lo=0, hi=p - 1)
            b = random_series(R, ("x",), 9, rng, lo=0, hi=p - 1)
            got = substitute(f, {"x": a, "y": b})
            want = sum(
                (TruncatedSeries.constant(R, ("x",), 9, 1).scale(c) * a ** e[0] * b ** e[1] for e, c in f.coeffs.items()),
                TruncatedSeries.zero(R, ("x",), 9),
            )
            assert got == want


def _generic_product(R, f, g):
    out = {}
    for e1, c1 in f.coeffs.items():
        for e2, c2 in g.coeffs.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if sum(e) <= 9:
                out[e] = (out.get(e, 0) + c1 * c2) % R.m
    return out


def test_kernel_functions_match_directly():
    from fgl import _pykernels

    try:
        from fgl import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(1)
    N, m = 12, 7
    idx = np.arange(0, N + 1, dtype=np.int64)
    c = rng.integers(0, m, N + 1).astype(np.int64)
    args = (idx, idx, c, idx, idx, c, N, N + 1, m)
    assert (_pykernels.mul_packed(*args) == _ckernels.mul_packed(*args)).all()
    exps = np.array([[i, j] for i in range(4) for j in range(4)], dtype=np.int64)
    fc = rng.integers(0, m, len(exps)).astype(np.int64)
    imgs = rng.integers(0, m, (2, N + 1)).astype(np.int64)
    imgs[:, 0] = 0
    assert (_pykernels.compose_univariate(exps, fc, imgs, N, m) == _ckernels.compose_univariate(exps, fc, imgs, N, m)).all()


def test_backend_selected_at_import():
    code = "import fgl; print(fgl.BACKEND)"
    env = dict(os.environ, FGL_PURE_PYTHON="1")
    forced = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert forced.stdout.strip() == "python"
    env["FGL_PURE_PYTHON"] = "0"
    default = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    built = importlib.util.find_spec("fgl._ckernels") is not None
    assert default.stdout.strip() == ("cython" if built else "python")
