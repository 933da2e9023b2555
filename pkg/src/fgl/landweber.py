"""Local Landweber exactness: is each u_n regular on R/(p, u_1, ..., u_{n-1})?"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnsupportedRingClass
from .laws import FormalGroupLaw, base_change, p_series
from .rings import RingElement, quotient_map, ring_label
from .series import ZeroToBound, leading_term_in_p_powers

DEFAULT_N_MAX = 3


@dataclass(frozen=True)
class Step:
    n: int
    u: RingElement
    ring: str
    regular: bool | None = None
    unit: bool = False

    def to_json(self) -> dict:
        d = {"n": self.n, "u": str(self.u), "ring": self.ring}
        if self.unit:
            d["unit"] = True
        else:
            d["regular"] = self.regular
        return d


@dataclass(frozen=True)
class ExactAtP:
    """Some u_n is a unit, so the next quotient is the zero ring."""

    n: int
    kind = "exact"


@dataclass(frozen=True)
class FailsAtP:
    """u_n * witness = 0 with witness nonzero in R/(p, ..., u_{n-1})."""

    n: int
    witness: RingElement
    kind = "fails"


@dataclass(frozen=True)
class InconclusiveAtP:
    n: int
    reason: str
    kind = "inconclusive"


@dataclass
class PrimeReport:
    prime: int
    steps: list = field(default_factory=list)
    outcome: object = None

    def to_json(self) -> dict:
        d = {"prime": self.prime, "steps": [s.to_json() for s in self.steps], "outcome": self.outcome.kind}
        if isinstance(self.outcome, FailsAtP):
            d["failed_at"] = self.outcome.n
            d["witness"] = str(self.outcome.witness)
        elif isinstance(self.outcome, InconclusiveAtP):
            d["stopped_at"] = self.outcome.n
            d["reason"] = self.outcome.reason
        return d


@dataclass
class LandweberReport:
    law: FormalGroupLaw
    primes: list
    per_prime: list

    @property
    def exact(self) -> bool:
        return all(isinstance(r.outcome, ExactAtP) for r in self.per_prime)

    @property
    def failed(self) -> bool:
        return any(isinstance(r.outcome, FailsAtP) for r in self.per_prime)

    def to_json(self) -> dict:
        return {
            "ring": ring_label(self.law.ring),
            "bound": self.law.bound,
            "primes": list(self.primes),
            "reports": [r.to_json() for r in self.per_prime],
        }


def _decide(u: RingElement):
    """('unit' | 'regular' | 'zero_divisor', witness) for u in its ring."""
    R = u.ring
    if R.unit_inverse(u.value) is not None:
        return "unit", None
    ok, w = R.is_regular(u.value)
    if ok:
        return "regular", None
    witness = RingElement(R, w)
    if not (u * witness).is_zero() or witness.is_zero():
        raise ArithmeticError(f"zero-divisor witness {witness} for {u} does not check out")
    return "zero_divisor", witness


def check_prime(law: FormalGroupLaw, p: int, n_max: int = DEFAULT_N_MAX) -> PrimeReport:
    report = PrimeReport(p)
    R = law.ring
    N = law.bound
    Q = R
    u = RingElement(R, R.from_int(p))
    s = None
    n = 0
    while True:
        try:
            status, witness = _decide(u)
        except UnsupportedRingClass as exc:
            report.steps.append(Step(n, u, ring_label(Q), regular=None))
            report.outcome = InconclusiveAtP(n, f"regularity undecidable: {exc}")
            return report
        if status == "unit":
            report.steps.append(Step(n, u, ring_label(Q), unit=True))
            report.outcome = ExactAtP(n)
            return report
        report.steps.append(Step(n, u, ring_label(Q), regular=(status == "regular")))
        if status == "zero_divisor":
            report.outcome = FailsAtP(n, witness)
            return report
        if n == n_max:
            report.outcome = InconclusiveAtP(n, f"n_max = {n_max} reached without the quotient collapsing")
            return report
        try:
            Q2, h = quotient_map(Q, [u.value])
        except UnsupportedRingClass as exc:
            report.outcome = InconclusiveAtP(n + 1, f"quotient ring unsupported: {exc}")
            return report
        s = p_series(base_change(law, h), p) if s is None else s.map_coefficients(h.apply_raw, Q2)
        Q = Q2
        n += 1
        if p**n > N:
            report.outcome = InconclusiveAtP(n, f"bound {N} is below x^{p**n}, where u_{n} sits")
            return report
        lead = leading_term_in_p_powers(s, p)
        if not isinstance(lead, ZeroToBound) and lead[0] < n:
            raise ArithmeticError(f"p-series has a lower term at x^{p**lead[0]} after quotienting")
        u = RingElement(Q, s.coefficient((p**n,)))


def landweber_check(law: FormalGroupLaw, primes, n_max: int = DEFAULT_N_MAX) -> LandweberReport:
    primes = list(primes)
    return LandweberReport(law, primes, [check_prime(law, p, n_max) for p in primes])
