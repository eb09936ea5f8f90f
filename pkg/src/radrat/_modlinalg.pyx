# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p linear algebra kernels.

LU factorization mod p, triangular solves, and the p-adic lifting inner
loop used for exact rational linear solving.  The caller guarantees the
word-size contracts: d * p * p < 2**62, and for the lifting loop
row_nnz * max|val| * p < 2**62, so every accumulation fits in int64.
"""

import numpy as np

IMPL = "compiled"


cdef long long _modpow(long long base, long long e, long long p):
    cdef long long r = 1
    base %= p
    while e > 0:
        if e & 1:
            r = (r * base) % p
        base = (base * base) % p
        e >>= 1
    return r


def prepare(a_in, long long p):
    """LU-factor ``a_in`` mod p (first-nonzero pivoting).

    Returns an opaque handle for solve_prepared/dixon_digits, or None when
    the matrix is singular mod p.
    """
    a = np.array(a_in, dtype=np.int64)
    cdef long long[:, ::1] m = a
    cdef Py_ssize_t d = m.shape[0]
    piv_arr = np.empty(d, dtype=np.int64)
    cdef long long[::1] piv = piv_arr
    cdef Py_ssize_t k, i, j, pr
    cdef long long inv, f, v
    for k in range(d):
        pr = -1
        for i in range(k, d):
            if m[i, k] % p != 0:
                pr = i
                break
        if pr < 0:
            return None
        piv[k] = pr
        if pr != k:
            for j in range(d):
                v = m[k, j]
                m[k, j] = m[pr, j]
                m[pr, j] = v
        inv = _modpow(m[k, k], p - 2, p)
        for i in range(k + 1, d):
            f = (m[i, k] * inv) % p
            m[i, k] = f
            if f == 0:
                continue
            for j in range(k + 1, d):
                v = (m[i, j] - f * m[k, j]) % p
                if v < 0:
                    v += p
                m[i, j] = v
    return (a, piv_arr)


cdef void _lu_solve(long long[:, ::1] lu, long long[::1] piv,
                    long long[::1] b, long long[::1] y, long long p):
    """Solve LU y = P b (all mod p); b entries must lie in [0, p)."""
    cdef Py_ssize_t d = lu.shape[0]
    cdef Py_ssize_t i, j
    cdef long long acc, v
    for i in range(d):
        y[i] = b[i]
    for i in range(d):
        j = piv[i]
        if j != i:
            v = y[i]
            y[i] = y[j]
            y[j] = v
    for i in range(d):
        acc = 0
        for j in range(i):
            acc += lu[i, j] * y[j]
        v = (y[i] - acc % p) % p
        if v < 0:
            v += p
        y[i] = v
    for i in range(d - 1, -1, -1):
        acc = 0
        for j in range(i + 1, d):
            acc += lu[i, j] * y[j]
        v = (y[i] - acc % p) % p
        if v < 0:
            v += p
        y[i] = (v * _modpow(lu[i, i], p - 2, p)) % p


def solve_prepared(handle, b_in, long long p):
    """Solve A y = b mod p for a prepared handle."""
    lu_a, piv_a = handle
    cdef long long[:, ::1] lu = lu_a
    cdef long long[::1] piv = piv_a
    b = np.remainder(np.asarray(b_in, dtype=np.int64), p)
    y_arr = np.empty(lu.shape[0], dtype=np.int64)
    cdef long long[::1] bv = b
    cdef long long[::1] y = y_arr
    _lu_solve(lu, piv, bv, y, p)
    return y_arr


def dixon_digits(handle, rows_in, cols_in, vals_in, b_in, long long p,
                 int iters):
    """Base-p digit vectors of the p-adic solution of A y = b.

    A is given both by the prepared handle (mod p) and exactly as COO
    (rows, cols, vals).  digits[t] holds the t-th base-p digit vector.
    """
    lu_a, piv_a = handle
    cdef long long[:, ::1] lu = lu_a
    cdef long long[::1] piv = piv_a
    cdef Py_ssize_t d = lu.shape[0]
    rows = np.ascontiguousarray(rows_in, dtype=np.int64)
    cols = np.ascontiguousarray(cols_in, dtype=np.int64)
    vals = np.ascontiguousarray(vals_in, dtype=np.int64)
    cdef long long[::1] rr = rows
    cdef long long[::1] cc = cols
    cdef long long[::1] vv = vals
    cdef Py_ssize_t nnz = rr.shape[0]
    r = np.array(b_in, dtype=np.int64)
    digits = np.zeros((iters, d), dtype=np.int64)
    w = np.zeros(d, dtype=np.int64)
    rm = np.zeros(d, dtype=np.int64)
    y = np.zeros(d, dtype=np.int64)
    cdef long long[::1] rv = r
    cdef long long[:, ::1] dig = digits
    cdef long long[::1] wv = w
    cdef long long[::1] rmv = rm
    cdef long long[::1] yv = y
    cdef Py_ssize_t t, i, e
    cdef long long v
    for t in range(iters):
        for i in range(d):
            v = rv[i] % p
            if v < 0:
                v += p
            rmv[i] = v
        _lu_solve(lu, piv, rmv, yv, p)
        for i in range(d):
            dig[t, i] = yv[i]
            wv[i] = 0
        for e in range(nnz):
            wv[rr[e]] += vv[e] * yv[cc[e]]
        for i in range(d):
            rv[i] = (rv[i] - wv[i]) / p
    return digits
