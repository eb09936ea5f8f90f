"""Exact integer and rational primitives.

Arbitrary-precision integers are plain Python ints.  Rationals are GMP-backed
``gmpy2.mpq`` when gmpy2 is available, else ``fractions.Fraction``; both store
reduced numerator/denominator pairs, hash identically and mix freely in
comparisons, so downstream code only relies on the shared surface (operators,
``.numerator``/``.denominator``).
"""

import math
from dataclasses import dataclass
from random import Random

from .config import DEFAULT, Limits
from .errors import DomainError, ResourceLimitError

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor, nonnegative; gcd(0, 0) = 0."""
    return math.gcd(a, b)


@dataclass(frozen=True)
class PrimeFactorization:
    """Factors as (prime, exponent) pairs with primes strictly increasing."""

    factors: tuple

    def product(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def __iter__(self):
        return iter(self.factors)


# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin test; deterministic below 3.3e24, else 24 extra rounds."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(24)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: Random, budget: int) -> tuple:
    """Find a nontrivial factor of composite odd n.

    Returns (factor, iterations_used).  factor is None if the budget ran out.
    """
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            # Backtrack one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
        # g == n even after backtracking: retry with new parameters.
    return None, used


def factorize(n: int, limits: Limits = DEFAULT) -> PrimeFactorization:
    """Canonical prime factorization of n >= 2.

    Trial division up to ``limits.factor_trial_bound``, then Pollard-rho
    (Brent variant) with an iteration budget; a budget overrun raises
    :class:`ResourceLimitError` rather than hanging.
    """
    if n < 2:
        raise DomainError(f"factorize requires n >= 2, got {n}")
    counts = {}
    for p in (2, 3):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    d = 5
    bound = limits.factor_trial_bound
    while d <= bound and d * d <= n:
        for step in (0, 2):
            q = d + step
            while n % q == 0:
                counts[q] = counts.get(q, 0) + 1
                n //= q
        d += 6
    budget = limits.factor_rho_budget
    rng = Random(0xFAC7)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= bound * bound or is_probable_prime(m):
            # Below bound**2 everything surviving trial division is prime.
            counts[m] = counts.get(m, 0) + 1
            continue
        f, used = _pollard_brent(m, rng, budget)
        budget -= used
        if f is None:
            raise ResourceLimitError(
                f"factoring budget exhausted on {m}; the radicand is too "
                "hard for the configured effort"
            )
        stack.append(f)
        stack.append(m // f)
    return PrimeFactorization(tuple(sorted(counts.items())))


def integer_root(n: int, k: int) -> int | None:
    """The exact integer k-th root of n, or None when n**(1/k) is irrational.

    Binary search on the magnitude; no floating point anywhere.
    """
    if n < 1 or k < 1:
        raise DomainError(f"integer_root requires n >= 1 and k >= 1, got ({n}, {k})")
    if k == 1 or n == 1:
        return n
    lo = 1 << ((n.bit_length() - 1) // k)
    hi = (lo << 1) + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def rat_from_str(text: str) -> Rat:
    """Parse 'p' or 'p/q' decimal strings into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        d = int(den)
        if d == 0:
            raise DomainError("zero denominator")
        return Rat(int(num), d)
    return Rat(int(text))


def rat_to_str(r) -> str:
    """Render as 'p' or 'p/q' (denominator omitted when 1)."""
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"
