"""Model data types: variables, exp-group coefficients, constraints.

A Coefficient is a finite sum of exp(alpha) * value groups, keyed by the
canonical radical exponent alpha; the alpha = 0 group is the plain radical
(or rational) part.  Group values are nonzero and exponents are kept in
minimized canonical form, so structural equality is value equality.
"""

from dataclasses import dataclass, field as dc_field

from . import field
from .config import DEFAULT, Limits
from .errors import DomainError
from .intervals import Interval, exp_interval
from .numeric import Rat


class Coefficient:
    """Sum of exp(alpha) * value groups; alpha and value are RadicalNumbers."""

    __slots__ = ("groups",)

    def __init__(self, groups: dict):
        self.groups = {a: v for a, v in groups.items() if not v.is_zero()}

    @staticmethod
    def from_radical(v: field.RadicalNumber) -> "Coefficient":
        return Coefficient({field.ZERO: v})

    @staticmethod
    def from_rat(r) -> "Coefficient":
        return Coefficient({field.ZERO: field.RadicalNumber.from_rat(r)})

    @staticmethod
    def zero() -> "Coefficient":
        return Coefficient({})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.groups

    def has_exp(self) -> bool:
        return any(not a.is_zero() for a in self.groups)

    def is_pure_radical(self) -> bool:
        return not self.has_exp()

    def is_rational(self) -> bool:
        return not self.has_exp() and self.pure_part().is_rational()

    def pure_part(self) -> field.RadicalNumber:
        """The alpha = 0 group's value (0 when absent)."""
        return self.groups.get(field.ZERO, field.ZERO)

    def rational_value(self):
        if not self.is_rational():
            raise DomainError("coefficient is not rational")
        return self.pure_part().rational_value() if self.groups else Rat(0)

    def items_sorted(self):
        """Groups with alpha = 0 first, then by canonical exponent order."""
        return sorted(
            self.groups.items(),
            key=lambda kv: (not kv[0].is_zero(), kv[0].sort_key()),
        )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        out = dict(self.groups)
        for a, v in other.groups.items():
            cur = out.get(a)
            if cur is None:
                out[a] = v
            else:
                _, (x, y) = field.unify_bases([cur, v])
                out[a] = field.minimize_basis(field.add(x, y))
        return Coefficient(out)

    def __neg__(self):
        return Coefficient({a: field.negate(v) for a, v in self.groups.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for a1, v1 in self.groups.items():
            for a2, v2 in other.groups.items():
                _, (ua, ub) = field.unify_bases([a1, a2])
                alpha = field.minimize_basis(field.add(ua, ub))
                _, (x, y) = field.unify_bases([v1, v2])
                val = field.minimize_basis(field.multiply(x, y))
                cur = out.get(alpha)
                if cur is not None:
                    _, (x, y) = field.unify_bases([cur, val])
                    val = field.minimize_basis(field.add(x, y))
                out[alpha] = val
        return Coefficient(out)

    def scale_radical(self, r: field.RadicalNumber) -> "Coefficient":
        out = {}
        for a, v in self.groups.items():
            _, (x, y) = field.unify_bases([v, r])
            out[a] = field.minimize_basis(field.multiply(x, y))
        return Coefficient(out)

    def divide(self, other: "Coefficient", limits: Limits = DEFAULT) -> "Coefficient":
        """Division; the divisor must be a single exp-group (a sum of
        exponential groups has no finite exp-group inverse)."""
        if other.is_zero():
            raise DomainError("division by zero coefficient")
        if len(other.groups) > 1:
            raise DomainError(
                "cannot divide by a sum of exponential groups"
            )
        (alpha, val), = other.groups.items()
        inv = field.invert(val, limits)
        out = {}
        for a, v in self.groups.items():
            _, (ua, ub) = field.unify_bases([a, alpha])
            na = field.minimize_basis(field.add(ua, field.negate(ub)))
            _, (x, y) = field.unify_bases([v, inv])
            nv = field.minimize_basis(field.multiply(x, y))
            cur = out.get(na)
            if cur is not None:
                _, (x, y) = field.unify_bases([cur, nv])
                nv = field.minimize_basis(field.add(x, y))
            out[na] = nv
        return Coefficient(out)

    # -- numerics -----------------------------------------------------------

    def enclosure(self, bits: int) -> Interval:
        """Guaranteed interval for the coefficient's real value."""
        total = Interval.point(0)
        for a, v in self.groups.items():
            part = field.evaluate(v, bits)
            if not a.is_zero():
                part = part * exp_interval(field.evaluate(a, bits), bits)
            total = total + part
        return total

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.groups == other.groups

    def __hash__(self):
        return hash(tuple(sorted(
            (a.sort_key(), v.sort_key()) for a, v in self.groups.items()
        )))

    def __repr__(self):
        from .write import coefficient_text

        return f"Coefficient({coefficient_text(self)})"

    def sort_key(self):
        return tuple(sorted(
            (a.sort_key(), v.sort_key()) for a, v in self.groups.items()
        ))


@dataclass(frozen=True)
class Variable:
    name: str
    is_integer: bool = False
    nonneg: bool = True


@dataclass(frozen=True)
class Constraint:
    """Linear form (per-variable Coefficient) REL constant Coefficient."""

    name: object  # str | None
    coeffs: dict
    relation: str  # '=', '<=', '>='
    rhs: Coefficient

    def __post_init__(self):
        if self.relation not in ("=", "<=", ">="):
            raise DomainError(f"bad relation {self.relation!r}")

    def support(self):
        return tuple(v for v in self.coeffs if not self.coeffs[v].is_zero())

    def has_exp(self) -> bool:
        return any(c.has_exp() for c in self.coeffs.values()) or self.rhs.has_exp()

    def is_rational(self) -> bool:
        return (
            all(c.is_rational() for c in self.coeffs.values())
            and self.rhs.is_rational()
        )

    def body_key(self):
        """Canonical content key (ignores the name); used for deduplication."""
        return (
            self.relation,
            tuple(sorted((v, c.sort_key()) for v, c in self.coeffs.items()
                         if not c.is_zero())),
            self.rhs.sort_key(),
        )


@dataclass(frozen=True)
class Model:
    variables: tuple
    sense: str  # 'max' | 'min'
    objective: dict  # var name -> Coefficient
    constraints: tuple
    objective_constant: Coefficient = dc_field(default_factory=Coefficient.zero)

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise DomainError(f"bad sense {self.sense!r}")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise DomainError("duplicate variable names")
        declared = set(names)
        for v in self.objective:
            if v not in declared:
                raise DomainError(f"objective references undeclared variable {v}")
        for c in self.constraints:
            for v in c.coeffs:
                if v not in declared:
                    raise DomainError(
                        f"constraint {c.name or '?'} references undeclared variable {v}"
                    )

    def var(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def has_exp(self) -> bool:
        return any(c.has_exp() for c in self.constraints) or any(
            c.has_exp() for c in self.objective.values()
        ) or self.objective_constant.has_exp()

    def is_rational(self) -> bool:
        return (
            all(c.is_rational() for c in self.constraints)
            and all(c.is_rational() for c in self.objective.values())
            and self.objective_constant.is_rational()
        )
