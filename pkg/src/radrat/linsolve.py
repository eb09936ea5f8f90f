"""Exact linear solving over the rationals.

Small systems use plain Gaussian elimination on exact rationals.  Larger
integer systems go through p-adic lifting: LU-factor the matrix mod a word
prime, lift base-p digit vectors with the selected kernel (compiled or pure),
then rationally reconstruct.  Lifted results are candidates: callers verify
them in their own domain (field inversion checks x * candidate == 1) and
retry with more digits on a miss, so a too-optimistic digit count is never
silently wrong.
"""

import numpy as np

from . import _kernel
from .numeric import Rat, gcd, is_probable_prime

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int


def gauss_solve_exact(rows, rhs):
    """Solve a square rational system by exact elimination.

    ``rows`` is a list of lists of rationals.  Returns a list of rationals,
    or None when the matrix is singular.
    """
    d = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for k in range(d):
        piv = next((i for i in range(k, d) if m[i][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        inv = 1 / Rat(m[k][k])
        mk = m[k] = [v * inv for v in m[k]]
        for i in range(d):
            if i == k:
                continue
            f = m[i][k]
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], mk)]
    return [m[i][d] for i in range(d)]


def row_reduce_witness(vectors):
    """Row-reduce rational vectors, tracking the combination history.

    Returns None when the vectors are linearly independent over Q, else an
    integer witness (lam_1, ..., lam_n) with sum(lam_i * v_i) = 0, scaled
    coprime with the first nonzero component positive.
    """
    n = len(vectors)
    basis = []  # (pivot_col, reduced_row, history)
    for idx, vec in enumerate(vectors):
        row = [Rat(v) for v in vec]
        hist = [Rat(0)] * n
        hist[idx] = Rat(1)
        for pcol, brow, bhist in basis:
            f = row[pcol]
            if f != 0:
                row = [a - f * b for a, b in zip(row, brow)]
                hist = [a - f * b for a, b in zip(hist, bhist)]
        pcol = next((j for j, v in enumerate(row) if v != 0), None)
        if pcol is None:
            return _normalize_witness(hist)
        inv = 1 / row[pcol]
        basis.append(
            (pcol, [v * inv for v in row], [v * inv for v in hist])
        )
    return None


def _normalize_witness(hist):
    den = 1
    for v in hist:
        den = den * v.denominator // gcd(den, int(v.denominator))
    ints = [int(v * den) for v in hist]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _word_primes(d):
    """Primes sized so d * p * p < 2**62 (exact int64 accumulations)."""
    bits = min(26, (62 - max(d, 2).bit_length()) // 2)
    while d << (2 * bits) >= 1 << 62:
        bits -= 1
    primes = []
    n = (1 << bits) - 1
    while len(primes) < 8:
        if is_probable_prime(n):
            primes.append(n)
        n -= 2
    return primes


_PRIME_CACHE: dict = {}


def _primes_for(d):
    key = max(d, 2).bit_length()
    if key not in _PRIME_CACHE:
        _PRIME_CACHE[key] = _word_primes(d)
    return _PRIME_CACHE[key]


def _hadamard_bits(d, rows, vals):
    """Integer upper bound on log2 |det| from row norms (COO form).

    float64 accumulation with a generous pad; only used to cap the digit
    schedule, never for correctness.
    """
    norms = np.zeros(d, dtype=np.float64)
    np.add.at(norms, rows, vals.astype(np.float64) ** 2)
    norms[norms < 1.0] = 1.0
    return int(np.ceil(0.5 * np.log2(norms).sum())) + d.bit_length() + 8


def _assemble(digits, p):
    """Base-p digit matrix (k, d) -> list of d Python ints."""
    k = digits.shape[0]
    if k % 2 == 1:
        digits = np.vstack([digits, np.zeros((1, digits.shape[1]), np.int64)])
        k += 1
    # One int64-safe level first (p**2 < 2**52), then an object-dtype tree.
    level = list((digits[0::2] + p * digits[1::2]).astype(object))
    base = mpz(p) * p
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            nxt.append(level[i] + base * level[i + 1])
        if len(level) % 2 == 1:
            nxt.append(level[-1])
        level = nxt
        base = base * base
    return [mpz(int(v)) for v in level[0]]


def _rat_reconstruct(y, m, bound):
    """Find u/v = y (mod m) with |u| <= bound, 0 < v <= bound, or None."""
    r0, r1 = mpz(m), mpz(y) % m
    t0, t1 = mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    u, v = r1, t1
    if v < 0:
        u, v = -u, -v
    g = gcd(int(u), int(v))
    if g > 1:
        u //= g
        v //= g
    return int(u), int(v)


def dixon_solve(a_int, b_int, coo=None, min_digits=24):
    """Candidate exact solution of a nonsingular integer system a y = b.

    ``a_int`` and ``b_int`` are int64 numpy arrays; ``coo`` optionally gives
    (rows, cols, vals) of a_int to speed the residue updates.  Returns a list
    of rationals or None (singular mod all tried primes, or word-size
    contracts not met).  The result is exact once enough digits were lifted;
    callers verify and may retry with a larger ``min_digits``.
    """
    d = a_int.shape[0]
    if d == 0:
        return []
    if coo is None:
        rows, cols = np.nonzero(a_int)
        vals = a_int[rows, cols]
    else:
        rows, cols, vals = coo
    row_weight = np.zeros(d, dtype=np.int64)
    np.add.at(row_weight, rows, np.abs(vals))
    for p in _primes_for(d):
        if int(row_weight.max(initial=0)) * p >= 1 << 62:
            return None
        if np.abs(b_int).max(initial=0) >= 1 << 60:
            return None
        handle = _kernel.prepare(a_int % p, p)
        if handle is None:
            continue
        k_cap = 2 * (2 * _hadamard_bits(d, rows, vals) + 64) // p.bit_length() + 4
        k = min(max(min_digits, 8), k_cap)
        while True:
            digits = _kernel.dixon_digits(handle, rows, cols, vals, b_int, p, k)
            sol = _reconstruct_vector(digits, p)
            if sol is not None:
                return sol
            if k >= k_cap:
                return None
            k = min(2 * k, k_cap)
    return None


def _reconstruct_vector(digits, p):
    k = digits.shape[0]
    m = mpz(p) ** k
    bound = _isqrt((m - 1) // 2)
    ys = _assemble(digits, p)
    den = mpz(1)
    loose = m >> min(40, m.bit_length() // 2)
    out = []
    for y in ys:
        z = (y * den) % m
        val = z if z <= m - z else z - m
        if abs(val) <= loose:
            out.append(Rat(int(val), int(den)))
            continue
        rec = _rat_reconstruct(z, m, bound)
        if rec is None:
            return None
        u, v = rec
        out.append(Rat(u, int(den) * v))
        den *= v
    return out


def _isqrt(n):
    try:
        from gmpy2 import isqrt

        return isqrt(n)
    except ImportError:  # pragma: no cover
        import math

        return math.isqrt(int(n))
