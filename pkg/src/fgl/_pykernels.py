"""Pure-Python versions of the modular series kernels (fallback backend).

Same signatures and results as the compiled ``_ckernels`` module.  Series
are passed packed: a monomial with exponents (e_0, ..., e_{k-1}) and bound N
has index sum(e_i * (N+1)**i); products never carry because total degree
stays <= N.
"""

import numpy as np

NAME = "python"


def mul_packed(a_idx, a_deg, a_c, b_idx, b_deg, b_c, N, size, m):
    """Dense product (length ``size``) of two packed series mod m.

    ``b`` must be sorted by ascending degree.
    """
    out = [0] * size
    b = list(zip(b_idx.tolist(), b_deg.tolist(), b_c.tolist()))
    for ai, ad, ac in zip(a_idx.tolist(), a_deg.tolist(), a_c.tolist()):
        lim = N - ad
        for bi, bd, bc in b:
            if bd > lim:
                break
            out[ai + bi] += ac * bc
    return np.array([v % m for v in out], dtype=np.int64)


def _mul_dense(a, b, N, m):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return [v % m for v in out]


def compose_univariate(f_exps, f_c, images, N, m):
    """f(img_0(x), ..., img_{k-1}(x)) mod m as a dense list of length N+1.

    ``f_exps`` is an (n, k) exponent array, ``images`` a (k, N+1) dense array
    of univariate series with zero constant term.
    """
    imgs = [list(map(int, row)) for row in images.tolist()]
    k = len(imgs)
    terms = [(tuple(e), int(c)) for e, c in zip(f_exps.tolist(), f_c.tolist())]
    maxe = [0] * k
    for e, _ in terms:
        for v in range(k):
            maxe[v] = max(maxe[v], e[v])
    powers = []
    for v in range(k):
        pw = [[1] + [0] * N]
        for _ in range(min(maxe[v], N)):
            pw.append(_mul_dense(pw[-1], imgs[v], N, m))
        powers.append(pw)
    inner = {}
    for e, c in terms:
        if any(e[v] > N for v in range(k)):
            continue
        if k == 1:
            vec = [c] + [0] * N
        else:
            vec = powers[1][e[1]]
            for v in range(2, k):
                vec = _mul_dense(vec, powers[v][e[v]], N, m)
            vec = [c * x for x in vec]
        acc = inner.setdefault(e[0], [0] * (N + 1))
        for j, x in enumerate(vec):
            if x:
                acc[j] += x
    out = [0] * (N + 1)
    for e0, vec in inner.items():
        vec = [x % m for x in vec]
        prod = _mul_dense(powers[0][e0], vec, N, m)
        for j, x in enumerate(prod):
            out[j] += x
    return np.array([x % m for x in out], dtype=np.int64)
