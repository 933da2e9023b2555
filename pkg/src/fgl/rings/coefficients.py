"""Base coefficient rings: ZZ, ZZ[1/S], QQ and ZZ/m.

Raw elements are plain Python ``int`` (ZZ, ZZ/m) or ``fractions.Fraction``
(QQ, ZZ[1/S]), always in canonical form, so ``==`` decides equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import NotAUnit
from ..numtheory import coprime_part, is_prime, prime_factors, strip_primes

# products of two residues below this bound fit comfortably in int64 kernels
MACHINE_MODULUS_LIMIT = 2**31


class CoefficientRing:
    """Common surface of the base rings; also usable directly as a ring."""

    names: tuple = ()
    is_zero_ring = False
    is_field = False
    characteristic = 0
    machine_modulus = None

    zero = 0
    one = 1

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def scale_int(self, a, n):
        return self.mul(a, self.from_int(n))

    def pow(self, a, e):
        if e < 0:
            inv = self.unit_inverse(a)
            if inv is None:
                raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
            a, e = inv, -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def coerce(self, raw):
        """Image of an ``int`` or ``Fraction`` under the canonical map."""
        if isinstance(raw, Fraction):
            return self.from_fraction(raw)
        return self.from_int(raw)

    def gen(self, name):
        raise KeyError(name)

    def constant_value(self, a):
        return a

    def is_constant(self, a):
        return True

    # -- structure --------------------------------------------------------
    def content_is_unit(self, values) -> bool:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<ring {self}>"


class IntegerRing(CoefficientRing):
    key = ("ZZ",)

    def from_int(self, n):
        return int(n)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator != 1:
            raise NotAUnit(f"{q.denominator} is not invertible in ZZ")
        return q.numerator

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def is_regular(self, a):
        return (True, None) if a != 0 else (False, 1)

    def quotient_constant(self, c):
        c = abs(int(c))
        return self if c == 0 else ModularRing(c)

    def localize_constant(self, c):
        if c == 0:
            return ModularRing(1)
        ps = prime_factors(c)
        return LocalizedIntegers(ps) if ps else self

    def content_is_unit(self, values):
        g = 0
        for v in values:
            g = gcd(g, v)
        return g == 1

    def format(self, a):
        return str(a)

    def __str__(self):
        return "ZZ"


class LocalizedIntegers(CoefficientRing):
    """ZZ[1/S] for a finite set S of primes; elements are reduced fractions."""

    def __init__(self, primes):
        self.primes = tuple(sorted(set(primes)))
        self.key = ("ZLoc", self.primes)
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        q = Fraction(q)
        if strip_primes(q.denominator, self.primes) != 1:
            raise NotAUnit(f"{q.denominator} is not invertible in {self}")
        return q

    def unit_inverse(self, a):
        if a == 0 or strip_primes(a.numerator, self.primes) != 1:
            return None
        return 1 / a

    def is_regular(self, a):
        return (True, None) if a != 0 else (False, self.one)

    def quotient_constant(self, c):
        n = strip_primes(Fraction(c).numerator, self.primes)
        if Fraction(c) == 0:
            return self
        return ModularRing(n)

    def localize_constant(self, c):
        c = Fraction(c)
        if c == 0:
            return ModularRing(1)
        ps = set(self.primes) | set(prime_factors(c.numerator))
        return LocalizedIntegers(ps)

    def content_is_unit(self, values):
        g = 0
        for v in values:
            g = gcd(g, v.numerator)
        return strip_primes(g, self.primes) == 1

    def format(self, a):
        return str(a)

    def __str__(self):
        return "ZZ[" + ", ".join(f"1/{p}" for p in self.primes) + "]"


class RationalField(CoefficientRing):
    key = ("QQ",)
    is_field = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def unit_inverse(self, a):
        return None if a == 0 else 1 / a

    def is_regular(self, a):
        return (True, None) if a != 0 else (False, self.one)

    def quotient_constant(self, c):
        return self if c == 0 else ModularRing(1)

    def localize_constant(self, c):
        return ModularRing(1) if c == 0 else self

    def content_is_unit(self, values):
        return any(v != 0 for v in values)

    def format(self, a):
        return str(a)

    def __str__(self):
        return "QQ"


class ModularRing(CoefficientRing):
    """ZZ/m with residues in [0, m); m = 1 is the zero ring."""

    def __init__(self, m: int):
        self.m = m
        self.key = ("Mod", m)
        self.characteristic = m
        self.is_zero_ring = m == 1
        self.is_field = m > 1 and is_prime(m)
        self.one = 1 % m
        self.machine_modulus = m if 1 < m < MACHINE_MODULUS_LIMIT else None

    def add(self, a, b):
        s = a + b
        return s - self.m if s >= self.m else s

    def sub(self, a, b):
        s = a - b
        return s + self.m if s < 0 else s

    def neg(self, a):
        return (self.m - a) if a else 0

    def mul(self, a, b):
        return a * b % self.m

    def from_int(self, n):
        return int(n) % self.m

    def from_fraction(self, q):
        q = Fraction(q)
        if gcd(q.denominator, self.m) != 1:
            raise NotAUnit(f"{q.denominator} is not invertible in {self}")
        return q.numerator * pow(q.denominator, -1, self.m) % self.m

    def unit_inverse(self, a):
        if self.m == 1:
            return 0
        if gcd(a, self.m) != 1:
            return None
        return pow(a, -1, self.m)

    def is_regular(self, a):
        if self.m == 1:
            return True, None
        g = gcd(a, self.m)
        return (True, None) if g == 1 else (False, self.m // g)

    def quotient_constant(self, c):
        g = gcd(int(c), self.m)
        return self if g == self.m else ModularRing(g)

    def localize_constant(self, c):
        c = int(c) % self.m
        if c == 0:
            return ModularRing(1)
        m2 = coprime_part(self.m, c)
        return self if m2 == self.m else ModularRing(m2)

    def content_is_unit(self, values):
        g = self.m
        for v in values:
            g = gcd(g, v)
        return g == 1

    def format(self, a):
        return str(a)

    def __str__(self):
        if self.is_field:
            return f"GF({self.m})"
        return f"ZZ/{self.m}"


ZZ = IntegerRing()
QQ = RationalField()
