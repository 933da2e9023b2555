import pytest
from conftest import gf

from fgl.chromatic import ExactHeight, u_sequence
from fgl.elliptic import formal_group, legendre
from fgl.laws import Additive, Honda, Multiplicative, PTypicalAraki, base_change, build_law
from fgl.landweber import ExactAtP, FailsAtP, InconclusiveAtP, check_prime, landweber_check
from fgl.rings import Integers, IntegersMod, Localization, Polynomial, build_ring, ring_hom

PRIMES = [2, 3, 5, 7, 11, 13]
LEGENDRE_RING = build_ring(Localization(Polynomial(Localization(Integers(), ("2",)), ("l",)), ("l^2 - l",)))
# Araki logarithm denominators through x^9 divide 3(3^2 - 1)(3^8 - 1); invert their primes other than 3
Z3 = Localization(Integers(), ("2", "5", "13", "41"))
ZZ_U = build_ring(Polynomial(Z3, ("u1",)))


def assert_consistent(report):
    for i, step in enumerate(report.steps):
        assert step.n == i
    assert report.steps[0].u.value == report.steps[0].u.ring.from_int(report.prime)
    out = report.outcome
    if isinstance(out, ExactAtP):
        assert report.steps[-1].unit and out.n == report.steps[-1].n
    if isinstance(out, FailsAtP):
        u = report.steps[-1].u
        assert not out.witness.is_zero() and (u * out.witness).is_zero()


def test_multiplicative_over_integers(ZZ):
    rep = landweber_check(build_law(Multiplicative(), ZZ, 14), PRIMES)
    assert rep.exact and not rep.failed
    for r in rep.per_prime:
        assert r.outcome == ExactAtP(1)
        assert [s.to_json()["regular"] if not s.unit else "unit" for s in r.steps] == [True, "unit"]
        assert_consistent(r)


def test_additive_over_integers(ZZ):
    rep = landweber_check(build_law(Additive(), ZZ, 8), [2, 3, 5])
    assert rep.failed
    for r in rep.per_prime:
        assert isinstance(r.outcome, FailsAtP) and r.outcome.n == 1 and r.outcome.witness.value == 1
        assert_consistent(r)


def test_additive_over_rationals(QQ):
    rep = landweber_check(build_law(Additive(), QQ, 8), PRIMES)
    assert all(r.outcome == ExactAtP(0) for r in rep.per_prime)


def test_legendre_at_three():
    law = formal_group(legendre(LEGENDRE_RING), 9)
    r = check_prime(law, 3, n_max=2)
    assert r.outcome == ExactAtP(2)
    assert [s.to_json() for s in r.steps] == [
        {"n": 0, "u": "3", "ring": "ZZ[1/2][l][1/(l^2 - l)]", "regular": True},
        {"n": 1, "u": "2*l + 2", "ring": "ZZ[1/2][l][1/(l^2 - l)]/(3)", "regular": True},
        {"n": 2, "u": "2", "ring": "ZZ[1/2][l][1/(l^2 - l)]/(3, 2*l + 2)", "unit": True},
    ]


def test_report_json_shape(ZZ):
    data = landweber_check(build_law(Additive(), ZZ, 8), [3]).to_json()
    assert data == {
        "ring": "ZZ",
        "bound": 8,
        "primes": [3],
        "reports": [
            {
                "prime": 3,
                "steps": [
                    {"n": 0, "u": "3", "ring": "ZZ", "regular": True},
                    {"n": 1, "u": "0", "ring": "ZZ/(3)", "regular": False},
                ],
                "outcome": "fails",
                "failed_at": 1,
                "witness": "1",
            }
        ],
    }


def test_inconclusive_outcomes(ZZ):
    law = build_law(PTypicalAraki(3, ("u1", "1")), ZZ_U, 8)
    r = check_prime(law, 3, n_max=3)
    assert isinstance(r.outcome, InconclusiveAtP) and r.outcome.n == 2 and "bound" in r.outcome.reason
    law = build_law(PTypicalAraki(3, ("u1", "u2")), build_ring(Polynomial(Z3, ("u1", "u2"))), 9)
    r = check_prime(law, 3, n_max=2)
    assert r.outcome == InconclusiveAtP(2, "n_max = 2 reached without the quotient collapsing")
    assert_consistent(r)


def test_fields_of_characteristic_p_fail_at_zero():
    r = check_prime(build_law(Honda(3, 1), gf(3), 5), 3)
    assert isinstance(r.outcome, FailsAtP) and r.outcome.n == 0


def test_agreement_with_u_sequence():
    law = build_law(PTypicalAraki(3, ("u1", "1")), ZZ_U, 9)
    r = check_prime(law, 3)
    seq = u_sequence(law, 3)
    assert isinstance(seq.verdict, ExactHeight) and r.outcome == ExactAtP(seq.verdict.n)
    assert [str(s.u) for s in r.steps] == [str(e.value) for e in seq.u_seq]
    mod9 = build_ring(Polynomial(IntegersMod(9), ("u1",)))
    seq9 = u_sequence(base_change(law, ring_hom(ZZ_U, mod9)), 3)
    assert seq9.verdict.n == seq.verdict.n


@pytest.mark.parametrize("inverted", [("11",), ("u1 + 1", "13")])
def test_stable_under_localization(inverted):
    law = build_law(PTypicalAraki(3, ("u1", "1")), ZZ_U, 9)
    R = build_ring(Localization(ZZ_U.descriptor, inverted))
    assert check_prime(law, 3).outcome == ExactAtP(2)
    assert check_prime(base_change(law, ring_hom(ZZ_U, R)), 3).outcome == ExactAtP(2)
    leg = formal_group(legendre(LEGENDRE_RING), 9)
    R2 = build_ring(Localization(LEGENDRE_RING.descriptor, ("l + 1",)))
    assert check_prime(base_change(leg, ring_hom(LEGENDRE_RING, R2)), 3).outcome == ExactAtP(1)
