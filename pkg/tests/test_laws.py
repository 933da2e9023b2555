import random
from fractions import Fraction

import pytest
from conftest import gf, zmod

from fgl.errors import AxiomViolation, DescriptorError, NonIntegral
from fgl.laws import (
    Additive,
    Explicit,
    FromLog,
    Honda,
    Multiplicative,
    PTypicalAraki,
    araki_sum,
    base_change,
    build_law,
    check_axioms,
    formal_inverse,
    n_series,
    p_series,
    spec_from_json,
    spec_to_json,
)
from fgl.rings import (
    IntegersMod,
    Polynomial,
    PrimeField,
    Quotient,
    Rationals,
    build_ring,
    quotient_map,
    ring_hom,
)
from fgl.series import TruncatedSeries, compose, substitute

XY = ("x", "y")


def ser(R, coeffs, N):
    return TruncatedSeries.univariate(R, coeffs, N)


def test_additive_and_multiplicative(ZZ):
    assert build_law(Additive(), ZZ, 6).F == TruncatedSeries.from_terms(ZZ, XY, 6, {(1, 0): 1, (0, 1): 1})
    mult = build_law(Multiplicative(), ZZ, 6)
    assert mult.F == TruncatedSeries.from_terms(ZZ, XY, 6, {(1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_multiplicative_needs_unit(ZZ):
    from fgl.errors import NotAUnit

    with pytest.raises(NotAUnit):
        build_law(Multiplicative("2"), ZZ, 6)


def test_fromlog_identity_is_additive(QQ):
    law = build_law(FromLog(ser(QQ, [0, 1], 8)), QQ, 8)
    assert law.F == build_law(Additive(), QQ, 8).F


def test_fromlog_needs_q_algebra(ZZ):
    with pytest.raises(DescriptorError):
        build_law(FromLog(ser(ZZ, [0, 1], 8)), ZZ, 8)


def test_araki_example_over_z9():
    R = build_ring(Polynomial(IntegersMod(9), ("u1",)))
    law = build_law(PTypicalAraki(3, ("u1", "1")), R, 27)
    assert p_series(law, 3) == araki_sum(law, 3, ("u1", "1"))


def test_araki_not_integral_over_integers(ZZ):
    with pytest.raises(NonIntegral) as exc:
        build_law(PTypicalAraki(2, ("1",)), ZZ, 8)
    assert exc.value.degree is not None


def test_formal_inverse_examples(ZZ):
    assert formal_inverse(build_law(Additive(), ZZ, 6)) == ser(ZZ, [0, -1], 6)
    mult = build_law(Multiplicative(), ZZ, 7)
    iota = formal_inverse(mult)
    assert iota == ser(ZZ, [0, -1, 1, -1, 1, -1, 1, -1], 7)
    x = mult.x()
    assert mult(x, iota).is_zero()
    F2 = gf(2)
    assert formal_inverse(build_law(Multiplicative(), F2, 7)) == ser(F2, [0] + [1] * 7, 7)


def test_n_series_examples(ZZ):
    add = build_law(Additive(), ZZ, 6)
    for n in range(-3, 6):
        assert n_series(add, n) == ser(ZZ, [0, n], 6)
    mult = build_law(Multiplicative(), ZZ, 6)
    assert n_series(mult, 2) == ser(ZZ, [0, 2, 1], 6)
    F5 = gf(5)
    assert n_series(build_law(Multiplicative(), F5, 9), 5) == TruncatedSeries.from_terms(F5, ("x",), 9, {(5,): 1})


def test_p_series_examples():
    F2, F3, F7 = gf(2), gf(3), gf(7)
    assert p_series(build_law(Honda(2, 1), F2, 8), 2) == TruncatedSeries.from_terms(F2, ("x",), 8, {(2,): 1})
    assert p_series(build_law(Honda(3, 2), F3, 40), 3) == TruncatedSeries.from_terms(F3, ("x",), 40, {(9,): 1})
    assert p_series(build_law(Additive(), F7, 10), 7).is_zero()


def test_base_change_examples(ZZ):
    F5 = gf(5)
    mult = build_law(Multiplicative(), ZZ, 8)
    red = base_change(mult, ring_hom(ZZ, F5))
    assert red.F == build_law(Multiplicative(), F5, 8).F
    R = build_ring(Polynomial(IntegersMod(9), ("u1",)))
    law = build_law(PTypicalAraki(3, ("u1", "1")), R, 27)
    Q0, h0 = quotient_map(R, [R.from_int(3), R.gen("u1")])
    s0 = p_series(base_change(law, h0), 3)
    assert s0 == TruncatedSeries.from_terms(Q0, ("x",), 27, {(9,): 1})
    Q1, h1 = quotient_map(R, [R.from_int(3), R.sub(R.gen("u1"), R.one)])
    s1 = p_series(base_change(law, h1), 3)
    assert s1.valuation() == 3 and s1.coefficient((3,)) == Q1.one


def test_explicit_axiom_violation(ZZ):
    bad = TruncatedSeries.from_terms(ZZ, XY, 5, {(1, 0): 1, (0, 1): 1, (2, 1): 1, (1, 2): 1})
    with pytest.raises(AxiomViolation) as exc:
        build_law(Explicit(bad), ZZ, 5)
    assert exc.value.axiom == "associativity"
    assert exc.value.coefficient is not None
    noncomm = TruncatedSeries.from_terms(ZZ, XY, 4, {(1, 0): 1, (0, 1): 1, (2, 1): 1})
    assert check_axioms(noncomm)[0] == "commutativity"
    nonunital = TruncatedSeries.from_terms(ZZ, XY, 4, {(1, 0): 1, (0, 1): 1, (2, 0): 1})
    assert check_axioms(nonunital)[0] == "unitality"


def test_spec_json_roundtrip(ZZ):
    for spec in (Additive(), Multiplicative("1"), Honda(3, 2), PTypicalAraki(3, ("u1", "1"))):
        assert spec_from_json(spec_to_json(spec), ZZ, 10) == spec


# ---------------------------------------------------------------------------
# properties


def random_log(R, N, rng):
    coeffs = [0, 1] + [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(N - 1)]
    return ser(R, coeffs, N)


def random_laws(rng, N=8):
    QQ = build_ring(Rationals())
    out = []
    for _ in range(3):
        out.append(build_law(FromLog(random_log(QQ, N, rng)), QQ, N))
        p = rng.choice([2, 3, 5])
        out.append(build_law(Multiplicative(str(rng.randint(1, p - 1))), gf(p), N))
    R = build_ring(Polynomial(PrimeField(3), ("v1", "v2")))
    out.append(build_law(PTypicalAraki(3, ("v1", "v2")), R, 9))
    out.append(build_law(PTypicalAraki(2, (str(rng.randint(0, 1)), "1")), gf(2), 8))
    return out


def test_constructors_satisfy_axioms():
    rng = random.Random(1)
    for law in random_laws(rng):
        assert check_axioms(law.F) is None


def test_n_series_identities():
    rng = random.Random(2)
    for law in random_laws(rng, N=7):
        series = {n: n_series(law, n) for n in range(-6, 7)}
        for m in range(-6, 7):
            for n in range(-6, 7):
                if abs(m * n) <= 6:
                    assert compose(series[m], series[n]) == series[m * n]
                if abs(m + n) <= 6:
                    assert law(series[m], series[n]) == series[m + n]


def test_base_change_commutes_with_n_series(ZZ):
    law = build_law(Multiplicative(), ZZ, 8)
    for m in (2, 3, 4, 6, 9):
        h = ring_hom(ZZ, zmod(m))
        reduced = base_change(law, h)
        for n in (2, 3, 5):
            assert n_series(reduced, n) == n_series(law, n).map_coefficients(h.apply_raw, h.dst)


def test_araki_property_random_parameters():
    rng = random.Random(4)
    for p in (2, 3):
        for _ in range(3):
            v = tuple(str(rng.randint(0, p - 1)) for _ in range(2))
            law = build_law(PTypicalAraki(p, v), gf(p), p * p + 1)
            assert p_series(law, p) == araki_sum(law, p, v)


def test_fromlog_logarithm_identity(QQ):
    rng = random.Random(6)
    for _ in range(5):
        log = random_log(QQ, 8, rng)
        law = build_law(FromLog(log), QQ, 8)
        x = TruncatedSeries.variable(QQ, XY, "x", 8)
        y = TruncatedSeries.variable(QQ, XY, "y", 8)
        assert substitute(log, {"x": law.F}) == substitute(log, {"x": x}) + substitute(log, {"x": y})


def test_honda_quotient_example():
    R = build_ring(Quotient(Polynomial(IntegersMod(9), ("u1",)), ("3", "u1")))
    law = build_law(PTypicalAraki(3, ("u1", "1")), R, 27)
    assert p_series(law, 3).valuation() == 9
