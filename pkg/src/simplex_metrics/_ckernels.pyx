# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contract as ``_pykernels``."""


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef list bi = list(b.items())
    cdef object ma, ca, mb, cb, m, prev
    for ma, ca in a.items():
        for mb, cb in bi:
            m = ma + mb
            prev = out.get(m)
            if prev is None:
                out[m] = ca * cb
            else:
                out[m] = prev + ca * cb
    return {m: c for m, c in out.items() if c}


def poly_mul_graded(list a, list b, Py_ssize_t bound):
    cdef dict out = {}
    cdef Py_ssize_t da, db, room
    cdef object ma, ca, mb, cb, m, prev
    cdef tuple ta, tb
    for ta in a:
        da = ta[2]
        room = bound - da
        if room < 0:
            continue
        ma = ta[0]
        ca = ta[1]
        for tb in b:
            db = tb[2]
            if db > room:
                continue
            m = ma + tb[0]
            prev = out.get(m)
            if prev is None:
                out[m] = ca * tb[1]
            else:
                out[m] = prev + ca * tb[1]
    return {m: c for m, c in out.items() if c}


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    cdef list m, row_i, row_k
    cdef object pivot, prev, lead
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        row_k = m[k]
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]
