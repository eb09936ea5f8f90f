"""Radical expression trees and their canonicalization.

A RadicalExpr is a tree of rational literals, root(k, n) nodes and field
operations.  ``canonicalize`` folds it into a RadicalNumber over a minimal
basis: radicands are factored into primes, each prime's fractional exponents
are put over their lowest common denominator, exponents are reduced into
[0, q) with extracted integer powers folded into the rational coefficient,
and perfect powers collapse to plain rationals.
"""

from dataclasses import dataclass

from . import field
from .config import DEFAULT, Limits
from .errors import DomainError
from .intervals import Interval, IntervalDivisionError, root_interval
from .numeric import Rat, factorize, gcd


@dataclass(frozen=True)
class Lit:
    value: object


@dataclass(frozen=True)
class Root:
    degree: int
    radicand: int


@dataclass(frozen=True)
class Neg:
    a: object


@dataclass(frozen=True)
class Add:
    a: object
    b: object


@dataclass(frozen=True)
class Sub:
    a: object
    b: object


@dataclass(frozen=True)
class Mul:
    a: object
    b: object


@dataclass(frozen=True)
class Div:
    a: object
    b: object


def _canon_root(degree, radicand, limits):
    if degree < 2:
        raise DomainError(f"root degree must be >= 2, got {degree}")
    if radicand < 1:
        raise DomainError(f"radicand must be >= 1, got {radicand}")
    if radicand == 1:
        return field.ONE
    coeff = Rat(1)
    pairs = []
    dim = 1
    for p, e in factorize(radicand, limits):
        g = gcd(e, degree)
        num, den = e // g, degree // g
        coeff *= Rat(p) ** (num // den)
        rem = num % den
        if rem:
            pairs.append((p, den, rem))
            dim *= den
    if dim > limits.dim_cap:
        from .errors import ResourceLimitError

        raise ResourceLimitError(
            f"root({degree},{radicand}) needs dimension {dim}, over the cap "
            f"{limits.dim_cap}"
        )
    return field.from_prime_powers(coeff, pairs)


def _binop(a, b, op, limits):
    _, (x, y) = field.unify_bases([a, b], limits)
    return field.minimize_basis(op(x, y))


def canonicalize(expr, limits: Limits = DEFAULT) -> field.RadicalNumber:
    """Fold an expression tree into canonical form over a minimal basis."""
    if isinstance(expr, Lit):
        return field.RadicalNumber.from_rat(expr.value)
    if isinstance(expr, Root):
        return _canon_root(expr.degree, expr.radicand, limits)
    if isinstance(expr, Neg):
        return field.negate(canonicalize(expr.a, limits))
    if isinstance(expr, Add):
        return _binop(canonicalize(expr.a, limits), canonicalize(expr.b, limits),
                      field.add, limits)
    if isinstance(expr, Sub):
        return _binop(canonicalize(expr.a, limits), canonicalize(expr.b, limits),
                      lambda x, y: field.add(x, field.negate(y)), limits)
    if isinstance(expr, Mul):
        return _binop(canonicalize(expr.a, limits), canonicalize(expr.b, limits),
                      field.multiply, limits)
    if isinstance(expr, Div):
        den = canonicalize(expr.b, limits)
        if den.is_zero():
            raise DomainError("division by a zero subexpression")
        inv = field.invert(den, limits)
        return _binop(canonicalize(expr.a, limits), inv, field.multiply, limits)
    raise DomainError(f"not a radical expression node: {expr!r}")


def tree_enclosure(expr, bits: int) -> Interval:
    """Interval evaluation of the raw tree (no canonicalization).

    Used as an independent cross-check that canonicalization preserves
    values.  Raises IntervalDivisionError when a divisor enclosure straddles
    zero at this precision; callers escalate.
    """
    if isinstance(expr, Lit):
        return Interval.point(expr.value)
    if isinstance(expr, Root):
        if expr.degree < 2 or expr.radicand < 1:
            raise DomainError(f"bad root({expr.degree},{expr.radicand})")
        return root_interval(expr.radicand, expr.degree, bits)
    if isinstance(expr, Neg):
        return -tree_enclosure(expr.a, bits)
    if isinstance(expr, Add):
        return tree_enclosure(expr.a, bits) + tree_enclosure(expr.b, bits)
    if isinstance(expr, Sub):
        return tree_enclosure(expr.a, bits) - tree_enclosure(expr.b, bits)
    if isinstance(expr, Mul):
        return tree_enclosure(expr.a, bits) * tree_enclosure(expr.b, bits)
    if isinstance(expr, Div):
        return tree_enclosure(expr.a, bits) / tree_enclosure(expr.b, bits)
    raise DomainError(f"not a radical expression node: {expr!r}")


def expr_enclosure(expr, precision_bits: int, max_bits: int = 1 << 16) -> Interval:
    """Tree enclosure with escalating precision until the width target."""
    goal = Rat(2) / (1 << precision_bits)
    bits = precision_bits + 8
    while True:
        try:
            enc = tree_enclosure(expr, bits)
            if enc.width() <= goal:
                return enc
        except IntervalDivisionError:
            pass
        bits *= 2
        if bits > max_bits:
            raise DomainError(
                "expression enclosure did not converge (division by ~zero?)"
            )
