# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular series kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

NAME = "cython"

ctypedef unsigned long long u64


def mul_packed(const long long[:] a_idx, const long long[:] a_deg, const long long[:] a_c,
               const long long[:] b_idx, const long long[:] b_deg, const long long[:] b_c,
               long long N, long long size, long long m):
    cdef Py_ssize_t i, j, na = a_idx.shape[0], nb = b_idx.shape[0]
    cdef long long ai, lim
    cdef u64 ac
    cdef u64 um = <u64> m
    out = np.zeros(size, dtype=np.int64)
    cdef long long[:] o = out
    cdef u64[:] acc
    if m < 65536:
        # residues < 2^16: products < 2^32, so at most 2^31 terms fit in a u64 slot
        acc_arr = np.zeros(size, dtype=np.uint64)
        acc = acc_arr
        for i in range(na):
            ac = <u64> a_c[i]
            ai = a_idx[i]
            lim = N - a_deg[i]
            for j in range(nb):
                if b_deg[j] > lim:
                    break
                acc[ai + b_idx[j]] += ac * <u64> b_c[j]
        for i in range(size):
            o[i] = <long long> (acc[i] % um)
    else:
        for i in range(na):
            ac = <u64> a_c[i]
            ai = a_idx[i]
            lim = N - a_deg[i]
            for j in range(nb):
                if b_deg[j] > lim:
                    break
                o[ai + b_idx[j]] = <long long> ((<u64> o[ai + b_idx[j]] + (ac * <u64> b_c[j]) % um) % um)
    return out


cdef void _mul_dense(const long long[:] a, const long long[:] b, long long[:] out,
                     long long N, long long m) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef u64 x, um = <u64> m
    for i in range(N + 1):
        out[i] = 0
    for i in range(N + 1):
        x = <u64> a[i]
        if x == 0:
            continue
        for j in range(N + 1 - i):
            if b[j] != 0:
                out[i + j] = <long long> ((<u64> out[i + j] + (x * <u64> b[j]) % um) % um)


def compose_univariate(const long long[:, :] f_exps, const long long[:] f_c,
                       const long long[:, :] images, long long N, long long m):
    cdef Py_ssize_t k = images.shape[0], n = f_exps.shape[0]
    cdef Py_ssize_t v, t, e, j, i
    cdef long long maxe = 0
    cdef u64 c, um = <u64> m
    for t in range(n):
        for v in range(k):
            if f_exps[t, v] > maxe:
                maxe = f_exps[t, v]
    if maxe > N:
        maxe = N
    pw_arr = np.zeros((k, maxe + 1, N + 1), dtype=np.int64)
    cdef long long[:, :, :] pw = pw_arr
    for v in range(k):
        pw[v, 0, 0] = 1
        for e in range(1, maxe + 1):
            _mul_dense(pw[v, e - 1], images[v], pw[v, e], N, m)
    inner_arr = np.zeros((maxe + 1, N + 1), dtype=np.int64)
    cdef long long[:, :] inner = inner_arr
    tmp_arr = np.zeros(N + 1, dtype=np.int64)
    tmp2_arr = np.zeros(N + 1, dtype=np.int64)
    cdef long long[:] tmp = tmp_arr
    cdef long long[:] tmp2 = tmp2_arr
    cdef bint skip
    for t in range(n):
        skip = False
        for v in range(k):
            if f_exps[t, v] > N:
                skip = True
        if skip:
            continue
        c = <u64> f_c[t]
        e = f_exps[t, 0]
        if k == 1:
            inner[e, 0] = <long long> ((<u64> inner[e, 0] + c) % um)
            continue
        for j in range(N + 1):
            tmp[j] = pw[1, f_exps[t, 1], j]
        for v in range(2, k):
            _mul_dense(tmp, pw[v, f_exps[t, v]], tmp2, N, m)
            for j in range(N + 1):
                tmp[j] = tmp2[j]
        for j in range(N + 1):
            if tmp[j] != 0:
                inner[e, j] = <long long> ((<u64> inner[e, j] + (c * <u64> tmp[j]) % um) % um)
    out_arr = np.zeros(N + 1, dtype=np.int64)
    cdef long long[:] out = out_arr
    for e in range(maxe + 1):
        _mul_dense(pw[0, e], inner[e], tmp, N, m)
        for j in range(N + 1):
            if tmp[j] != 0:
                out[j] = <long long> ((<u64> out[j] + <u64> tmp[j]) % um)
    return out_arr
