"""Directed-rounding interval arithmetic with exact rational endpoints.

Endpoints are exact rationals, so +, -, * and / are themselves exact; only
root and exp enclosures introduce outward rounding, quantized to a power of
two chosen by the caller.  Every operation guarantees the true real value of
the represented expression lies inside the result.
"""

from dataclasses import dataclass

from .errors import DomainError
from .numeric import Rat

try:
    from gmpy2 import iroot as _iroot
    from gmpy2 import mpz as _mpz

    def floor_kth_root(n: int, k: int) -> int:
        return int(_iroot(_mpz(n), k)[0])

except ImportError:  # pragma: no cover

    def floor_kth_root(n: int, k: int) -> int:
        """Integer Newton iteration for floor(n**(1/k)), n >= 0."""
        if n < 2:
            return n
        x = 1 << (-(-n.bit_length() // k))
        while True:
            y = ((k - 1) * x + n // x ** (k - 1)) // k
            if y >= x:
                break
            x = y
        while x**k > n:
            x -= 1
        return x


class IntervalDivisionError(DomainError):
    """Divisor interval contains zero; the caller should raise precision."""


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(r) -> "Interval":
        r = Rat(r)
        return Interval(r, r)

    def __add__(self, other):
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        ps = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(ps), max(ps))

    def __truediv__(self, other):
        if other.lo <= 0 <= other.hi:
            raise IntervalDivisionError(
                "divisor enclosure contains zero; refine precision"
            )
        ps = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval(min(ps), max(ps))

    def scaled(self, r) -> "Interval":
        r = Rat(r)
        if r >= 0:
            return Interval(self.lo * r, self.hi * r)
        return Interval(self.hi * r, self.lo * r)

    def pow_int(self, k: int) -> "Interval":
        """k >= 0.  Our uses are nonnegative bases, but negatives are handled."""
        out = Interval.point(1)
        for _ in range(k):
            out = out * self
        return out

    def width(self):
        return self.hi - self.lo

    def contains(self, r) -> bool:
        return self.lo <= r <= self.hi

    def overlaps(self, other) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> int | None:
        """Definite sign of every point in the interval, or None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def mag(self):
        """Upper bound on |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def round_out(self, bits: int) -> "Interval":
        """Widen endpoints outward onto the 2**-bits grid.

        Keeps endpoint bit-size bounded in long accumulations; the result
        still encloses the original interval.
        """
        scale = 1 << bits
        lo = self.lo * scale
        hi = self.hi * scale
        lo_floor = lo.numerator // lo.denominator
        hi_ceil = -((-hi.numerator) // hi.denominator)
        return Interval(Rat(lo_floor, scale), Rat(hi_ceil, scale))


def root_interval(n: int, k: int, bits: int) -> Interval:
    """Enclosure of n**(1/k) with width <= 2**-bits, n >= 1, k >= 1."""
    if n < 1 or k < 1:
        raise DomainError(f"root_interval requires n >= 1, k >= 1, got ({n}, {k})")
    scale = 1 << bits
    r = floor_kth_root(n << (k * bits), k)
    if r**k == n << (k * bits):
        v = Rat(r, scale)
        return Interval(v, v)
    return Interval(Rat(r, scale), Rat(r + 1, scale))


_ROOT_CACHE: dict = {}


def cached_root(p: int, q: int, bits: int) -> Interval:
    """Memoized prime-root enclosures; the hot path of sign determination."""
    key = (p, q, bits)
    got = _ROOT_CACHE.get(key)
    if got is None:
        if len(_ROOT_CACHE) > 4096:
            _ROOT_CACHE.clear()
        got = _ROOT_CACHE[key] = root_interval(p, q, bits)
    return got


def exp_interval(x: Interval, bits: int) -> Interval:
    """Rigorous enclosure of exp over x, outward-rounded mpfr endpoints."""
    from mpmath import iv
    from mpmath.libmp import to_rational

    old = iv.prec
    try:
        iv.prec = bits + 16
        enc = iv.exp(
            iv.mpf(int(x.lo.numerator)) / iv.mpf(int(x.lo.denominator))
        )
        enc2 = iv.exp(
            iv.mpf(int(x.hi.numerator)) / iv.mpf(int(x.hi.denominator))
        )
        a, _ = enc._mpi_
        _, b = enc2._mpi_
        lo = to_rational(a)
        hi = to_rational(b)
    finally:
        iv.prec = old
    return Interval(Rat(int(lo[0]), int(lo[1])), Rat(int(hi[0]), int(hi[1])))
