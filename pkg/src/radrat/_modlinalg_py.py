"""Pure-Python (numpy) fallback for the mod-p linear algebra kernels.

Same interface and word-size contracts as the compiled module: the caller
guarantees d * p * p < 2**62 so every int64 accumulation below is exact.
The prepared handle here is a full mod-p inverse (amortizes better than
triangular solves given numpy's per-call overhead), computed by block
Gauss-Jordan: with 32-wide blocks the matmul accumulations stay below
2**57, and a singular pivot block simply falls back to the scalar path.
"""

import numpy as np

IMPL = "pure"

_BLOCK = 32


def _scalar_inverse(a, p):
    d = a.shape[0]
    m = np.concatenate([a % p, np.eye(d, dtype=np.int64)], axis=1)
    for k in range(d):
        nz = np.nonzero(m[k:, k])[0]
        if nz.size == 0:
            return None
        i = k + int(nz[0])
        if i != k:
            m[[k, i]] = m[[i, k]]
        inv = pow(int(m[k, k]), p - 2, p)
        m[k] = (m[k] * inv) % p
        col = m[:, k].copy()
        col[k] = 0
        m = (m - col[:, None] * m[k][None, :]) % p
    return np.ascontiguousarray(m[:, d:])


def _block_inverse(a, p):
    """Gauss-Jordan by pivot blocks; None when a pivot block is singular
    mod p (caller falls back to the pivoting scalar path)."""
    d = a.shape[0]
    m = np.concatenate([a % p, np.eye(d, dtype=np.int64)], axis=1)
    for k0 in range(0, d, _BLOCK):
        k1 = min(k0 + _BLOCK, d)
        pinv = _scalar_inverse(m[k0:k1, k0:k1].copy(), p)
        if pinv is None:
            return None
        r = (pinv @ m[k0:k1]) % p
        rest = np.concatenate([np.arange(k0), np.arange(k1, d)])
        if rest.size:
            cols = m[rest][:, k0:k1]
            m[rest] = (m[rest] - cols @ r) % p
        m[k0:k1] = r
    return np.ascontiguousarray(m[:, d:])


def prepare(a_in, p):
    """Invert ``a_in`` mod p; None when singular mod p."""
    a = np.remainder(np.asarray(a_in, dtype=np.int64), p)
    if a.shape[0] > _BLOCK:
        inv = _block_inverse(a, p)
        if inv is not None:
            return inv
    return _scalar_inverse(a, p)


def solve_prepared(handle, b_in, p):
    b = np.remainder(np.asarray(b_in, dtype=np.int64), p)
    return (handle @ b) % p


def dixon_digits(handle, rows_in, cols_in, vals_in, b_in, p, iters):
    rows = np.asarray(rows_in, dtype=np.int64)
    cols = np.asarray(cols_in, dtype=np.int64)
    vals = np.asarray(vals_in, dtype=np.int64)
    r = np.array(b_in, dtype=np.int64)
    d = handle.shape[0]
    digits = np.zeros((iters, d), dtype=np.int64)
    for t in range(iters):
        y = (handle @ np.remainder(r, p)) % p
        digits[t] = y
        w = np.zeros(d, dtype=np.int64)
        np.add.at(w, rows, vals * y[cols])
        r = (r - w) // p
    return digits
