"""Integer and F_p[x] helpers for descriptor validation and field construction."""

from __future__ import annotations

import itertools
from math import gcd, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| in increasing order."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def strip_primes(n: int, primes) -> int:
    """Remove every factor of ``primes`` from ``n`` (sign is dropped)."""
    n = abs(n)
    if n == 0:
        return 0
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def coprime_part(m: int, c: int) -> int:
    """Largest divisor of m sharing no prime with c."""
    out = m
    for q in prime_factors(c) if c else prime_factors(m):
        while out % q == 0:
            out //= q
    return out


# --- dense polynomials over F_p, coefficient lists in ascending degree ---

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    """Rabin's test for a monic polynomial given in ascending coefficient order."""
    f = _trim([c % p for c in coeffs])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _trim(_psub(_ppowmod(x, p**d, f, p), x, p)):
        return False
    for q in prime_factors(d):
        h = _psub(_ppowmod(x, p ** (d // q), f, p), x, p)
        g = _pgcd(f, h, p)
        if len(g) - 1 > 0:
            return False
    return True


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def first_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """First monic irreducible of the given degree, lexicographic in (c0, ..., c_{d-1})."""
    for lower in itertools.product(range(p), repeat=degree):
        cand = tuple(lower) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {degree} over F_{p}")


__all__ = [
    "gcd",
    "is_prime",
    "prime_factors",
    "strip_primes",
    "coprime_part",
    "is_irreducible_mod_p",
    "first_irreducible",
]
