"""Sparse multivariate polynomials over a coefficient ring and Buchberger's algorithm.

Polynomials are dicts ``{exponent tuple: nonzero coefficient}``.  Basis
elements are kept monic; a remainder whose leading coefficient is not a unit
raises :class:`NonUnitLeading`, which is how the unsupported cases over
non-field coefficient rings surface.
"""

from __future__ import annotations

import heapq
import itertools


class NonUnitLeading(Exception):
    def __init__(self, poly):
        self.poly = poly
        super().__init__("leading coefficient is not a unit")


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def elimination_key(nblock):
    """Block order eliminating the first ``nblock`` variables, grevlex inside blocks."""

    def key(e):
        return (grevlex_key(e[:nblock]), grevlex_key(e[nblock:]))

    return key


def is_constant(p):
    return not p or (len(p) == 1 and not any(next(iter(p))))


def padd(C, p, q):
    out = dict(p)
    for e, c in q.items():
        if e in out:
            s = C.add(out[e], c)
            if C.is_zero(s):
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c
    return out


def pneg(C, p):
    return {e: C.neg(c) for e, c in p.items()}


def psub(C, p, q):
    return padd(C, p, pneg(C, q))


def pscale(C, p, c):
    out = {}
    for e, a in p.items():
        v = C.mul(a, c)
        if not C.is_zero(v):
            out[e] = v
    return out


def pmul(C, p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    add, mul, is_zero = C.add, C.mul, C.is_zero
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = mul(c1, c2)
            if e in out:
                v = add(out[e], v)
            out[e] = v
    return {e: c for e, c in out.items() if not is_zero(c)}


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def leading(p, key):
    e = max(p, key=key)
    return e, p[e]


def normal_form(C, p, basis, key):
    """Fully reduce ``p`` by a list of monic ``(lead, poly)`` pairs."""
    if not basis or not p:
        return dict(p)
    work = dict(p)
    out = {}
    heap = [(_neg_key(key(e)), e) for e in work]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None:
            continue
        for lead, g in basis:
            if divides(lead, e):
                shift = tuple(x - y for x, y in zip(e, lead))
                for ge, gc in g.items():
                    if ge == lead:
                        continue
                    te = tuple(x + y for x, y in zip(ge, shift))
                    v = C.mul(c, gc)
                    if te in work:
                        nv = C.sub(work[te], v)
                        if C.is_zero(nv):
                            del work[te]
                        else:
                            work[te] = nv
                    else:
                        work[te] = C.neg(v)
                        heapq.heappush(heap, (_neg_key(key(te)), te))
                break
        else:
            out[e] = c
    return out


def _neg_key(k):
    # heapq is a min-heap; keys are nested tuples of ints
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


def make_monic(C, p, key):
    lead, lc = leading(p, key)
    inv = C.unit_inverse(lc)
    if inv is None:
        raise NonUnitLeading(p)
    return lead, (p if lc == C.one else pscale(C, p, inv))


def s_polynomial(C, f, g):
    (lf, pf), (lg, pg) = f, g
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    a = {tuple(x + y for x, y in zip(e, mf)): c for e, c in pf.items()}
    b = {tuple(x + y for x, y in zip(e, mg)): c for e, c in pg.items()}
    return psub(C, a, b)


def groebner(C, polys, key):
    """Reduced monic Groebner basis of the ideal generated by ``polys``.

    Returns a list of ``(lead, poly)``.  A basis ``[(0..0, {0..0: 1})]`` means
    the unit ideal.
    """
    basis = []
    for p in polys:
        r = normal_form(C, p, basis, key)
        if r:
            basis.append(make_monic(C, r, key))
            if is_constant(basis[-1][1]):
                return [basis[-1]]
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        li, lj = basis[i][0], basis[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        r = normal_form(C, s_polynomial(C, basis[i], basis[j]), basis, key)
        if r:
            basis.append(make_monic(C, r, key))
            if is_constant(basis[-1][1]):
                return [basis[-1]]
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    return _interreduce(C, basis, key)


def _interreduce(C, basis, key):
    minimal = []
    for idx, (lead, g) in enumerate(basis):
        if any(
            divides(other, lead) and (other != lead or jdx < idx)
            for jdx, (other, _) in enumerate(basis)
            if jdx != idx
        ):
            continue
        minimal.append((lead, g))
    out = []
    for idx, (lead, g) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = {e: c for e, c in g.items() if e != lead}
        red = normal_form(C, tail, others, key)
        red[lead] = C.one
        out.append((lead, red))
    out.sort(key=lambda b: key(b[0]))
    return out


def divide_exact(C, h, a, key):
    """Quotient q with h = q*a in C[x]; None if the division leaves a remainder."""
    lead, mon = make_monic(C, a, key)
    lc_inv = C.unit_inverse(a[lead])
    work = dict(h)
    q = {}
    while work:
        e, c = leading(work, key)
        if not divides(lead, e):
            return None
        shift = tuple(x - y for x, y in zip(e, lead))
        q[shift] = C.mul(c, lc_inv)
        work = psub(C, work, {tuple(x + y for x, y in zip(ge, shift)): C.mul(c, gc) for ge, gc in mon.items()})
    return q
