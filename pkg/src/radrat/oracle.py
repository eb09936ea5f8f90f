"""Ground truth by brute force: exact integer enumeration over boxes.

Feasibility decisions are exact everywhere: equality rows reduce to integer
arithmetic on monomial coordinates, radical inequality signs go through the
exact sign routine, and exponential combinations are confirmed through their
split form or refuted by escalating interval evaluation (intervals only ever
refute, never accept).
"""

from dataclasses import dataclass
from itertools import product
from random import Random

import numpy as np

from . import field
from .canon import Root, canonicalize
from .config import DEFAULT, Limits
from .errors import DomainError, ResourceLimitError
from .intervals import Interval, exp_interval
from .model import Coefficient, Constraint, Model, Variable
from .numeric import Rat, gcd
from .rationalize import check_q_independence


@dataclass(frozen=True)
class Box:
    """Inclusive integer bounds per variable, aligned with the model order."""

    bounds: tuple

    @staticmethod
    def uniform(m: Model, lo: int, hi: int) -> "Box":
        if lo > hi:
            raise DomainError(f"empty box {lo}:{hi}")
        return Box(tuple((lo, hi) for _ in m.variables))

    def volume(self) -> int:
        v = 1
        for lo, hi in self.bounds:
            v *= max(0, hi - lo + 1)
        return v


def _effective_bounds(m: Model, box: Box):
    if len(box.bounds) != len(m.variables):
        raise DomainError("box does not match the model's variables")
    eff = []
    for v, (lo, hi) in zip(m.variables, box.bounds):
        if v.nonneg:
            lo = max(lo, 0)
        eff.append((lo, hi))
    return eff


def _group_int_rows(values, n_index, limits):
    """Integer monomial rows for a list of per-variable radical values.

    values: list of (var_index, RadicalNumber) plus ('rhs', RadicalNumber).
    Returns rows [(a_vec, b_int)] with exact integer entries: one row per
    monomial of the unified basis, scaled by the denominators' lcm.
    """
    vals = [v for _, v in values]
    _, unified = field.unify_bases(vals, limits)
    monos = sorted({m for x in unified for m in x.terms})
    rows = []
    for mono in monos:
        coords = [x.terms.get(mono, Rat(0)) for x in unified]
        lcm = 1
        for c in coords:
            d = int(c.denominator)
            lcm = lcm * d // gcd(lcm, d)
        a = [0] * n_index
        b = 0
        for (key, _), c in zip(values, coords):
            n = int(c.numerator) * (lcm // int(c.denominator))
            if key == "rhs":
                b = n
            else:
                a[key] = n
        rows.append((a, b))
    return rows


class _ExpChecker:
    """Exact feasibility test for one constraint with exp groups."""

    def __init__(self, c: Constraint, var_index, limits: Limits):
        self.c = c
        self.limits = limits
        alphas = set()
        for coeff in list(c.coeffs.values()) + [c.rhs]:
            alphas.update(coeff.groups)
        self.alphas = sorted(alphas, key=lambda a: a.sort_key())
        nonzero = [a for a in self.alphas if not a.is_zero()]
        self.independent = check_q_independence(nonzero, limits) is None
        self.group_rows = []
        self.group_values = []
        for alpha in self.alphas:
            vals = []
            for v, coeff in c.coeffs.items():
                g = coeff.groups.get(alpha)
                if g is not None:
                    vals.append((var_index[v], g))
            rv = c.rhs.groups.get(alpha, field.ZERO)
            vals.append(("rhs", rv))
            self.group_rows.append(_group_int_rows(vals, len(var_index), limits))
            self.group_values.append(vals)

    def _groups_vanish(self, point) -> bool:
        for rows in self.group_rows:
            for a, b in rows:
                if sum(ai * xi for ai, xi in zip(a, point)) != b:
                    return False
        return True

    def _group_value(self, gi, point) -> field.RadicalNumber:
        vals = self.group_values[gi]
        parts = []
        for key, v in vals:
            if key == "rhs":
                parts.append(field.negate(v))
            else:
                parts.append(field.scale(v, point[key]))
        _, unified = field.unify_bases(parts, self.limits)
        total = unified[0]
        for u in unified[1:]:
            total = field.add(total, u)
        return total

    def _interval_sign(self, point) -> int:
        bits = self.limits.sign_bits_start
        while bits <= self.limits.sign_bits_cap:
            total = Interval.point(0)
            for gi, alpha in enumerate(self.alphas):
                g = self._group_value(gi, point)
                if g.is_zero():
                    continue
                enc = field.evaluate(g, bits)
                if not alpha.is_zero():
                    enc = enc * exp_interval(field.evaluate(alpha, bits), bits)
                total = total + enc
            s = total.sign()
            if s is not None and s != 0:
                return s
            bits *= 2
        raise ResourceLimitError(
            "could not separate an exponential combination from zero at the "
            f"precision cap {self.limits.sign_bits_cap}"
        )

    def feasible(self, point) -> bool:
        vanish = self._groups_vanish(point)
        if self.c.relation == "=":
            if vanish:
                return True  # exact confirmation via the split form
            if self.independent:
                return False  # split form is exact iff under independence
            return False if self._interval_sign(point) != 0 else True
        # inequality: zero satisfies both <= and >=; else strict sign
        if vanish:
            return True
        s = self._interval_sign(point)
        return s < 0 if self.c.relation == "<=" else s > 0


class _RadicalIneqChecker:
    """Exact sign test for an irrational inequality at integer points."""

    def __init__(self, c: Constraint, var_index, limits: Limits):
        self.c = c
        self.limits = limits
        self.parts = [
            (var_index[v], coeff.pure_part()) for v, coeff in c.coeffs.items()
        ]
        self.rhs = c.rhs.pure_part()

    def feasible(self, point) -> bool:
        parts = [field.scale(v, point[i]) for i, v in self.parts]
        parts.append(field.negate(self.rhs))
        _, unified = field.unify_bases(parts, self.limits)
        total = unified[0]
        for u in unified[1:]:
            total = field.add(total, u)
        s = field.sign(total, self.limits)
        if self.c.relation == "<=":
            return s <= 0
        if self.c.relation == ">=":
            return s >= 0
        return s == 0


def _compile(m: Model, limits: Limits):
    """(int_rows, general_checkers): integer rows cover equalities and
    rational inequalities; everything else gets an exact per-point checker."""
    var_index = {v.name: i for i, v in enumerate(m.variables)}
    n = len(m.variables)
    eq_rows = []
    ineq_rows = []
    general = []
    for c in m.constraints:
        if c.has_exp():
            general.append(_ExpChecker(c, var_index, limits))
            continue
        if c.relation == "=":
            vals = [(var_index[v], coeff.pure_part()) for v, coeff in c.coeffs.items()]
            vals.append(("rhs", c.rhs.pure_part()))
            eq_rows.extend(_group_int_rows(vals, n, limits))
        elif c.is_rational():
            vals = [(var_index[v], coeff.pure_part()) for v, coeff in c.coeffs.items()]
            vals.append(("rhs", c.rhs.pure_part()))
            rows = _group_int_rows(vals, n, limits)
            (a, b), = rows if rows else [(([0] * n), 0)]
            ineq_rows.append((a, b, c.relation))
        else:
            general.append(_RadicalIneqChecker(c, var_index, limits))
    return eq_rows, ineq_rows, general


def feasible_points(m: Model, box: Box, limits: Limits = DEFAULT):
    """All integer points of the box satisfying the model exactly, sorted
    lexicographically."""
    eff = _effective_bounds(m, box)
    if any(lo > hi for lo, hi in eff):
        return []
    volume = 1
    for lo, hi in eff:
        volume *= hi - lo + 1
    if volume > limits.enum_cap:
        raise ResourceLimitError(
            f"box volume {volume} exceeds enumeration cap {limits.enum_cap}"
        )
    eq_rows, ineq_rows, general = _compile(m, limits)
    n = len(m.variables)
    if n == 0:
        ok = all(b == 0 for _, b in eq_rows)
        return [()] if ok else []

    max_abs = max(max(abs(lo), abs(hi)) for lo, hi in eff)
    max_coef = 1
    for a, b, *_ in eq_rows + [(a, b) for a, b, _ in ineq_rows]:
        for v in a:
            max_coef = max(max_coef, abs(v))
        max_coef = max(max_coef, abs(b))
    vector_safe = n * max_abs * max_coef < (1 << 62)

    out = []
    if vector_safe:
        sizes = [hi - lo + 1 for lo, hi in eff]
        lows = np.array([lo for lo, _ in eff], dtype=np.int64)
        a_eq = np.array([a for a, _ in eq_rows], dtype=np.int64).reshape(
            len(eq_rows), n
        )
        b_eq = np.array([b for _, b in eq_rows], dtype=np.int64)
        chunk = max(1, min(volume, 1 << 18))
        for start in range(0, volume, chunk):
            idx = np.arange(start, min(start + chunk, volume))
            coords = np.array(np.unravel_index(idx, sizes)).T + lows
            mask = np.ones(len(coords), dtype=bool)
            if len(eq_rows):
                mask &= ((coords @ a_eq.T) == b_eq).all(axis=1)
            for a, b, rel in ineq_rows:
                lhs = coords @ np.array(a, dtype=np.int64)
                mask &= lhs <= b if rel == "<=" else lhs >= b
            for pt in coords[mask]:
                tup = tuple(int(v) for v in pt)
                if all(chk.feasible(tup) for chk in general):
                    out.append(tup)
        return out

    ranges = [range(lo, hi + 1) for lo, hi in eff]
    for pt in product(*ranges):
        if all(
            sum(ai * xi for ai, xi in zip(a, pt)) == b for a, b in eq_rows
        ) and all(
            (sum(ai * xi for ai, xi in zip(a, pt)) <= b)
            if rel == "<="
            else (sum(ai * xi for ai, xi in zip(a, pt)) >= b)
            for a, b, rel in ineq_rows
        ) and all(chk.feasible(pt) for chk in general):
            out.append(pt)
    return out


def check_equivalence(original: Model, rationalized, box: Box,
                      limits: Limits = DEFAULT):
    """None when both models have identical feasible sets on the box, else
    the lexicographically first counterexample point."""
    other = getattr(rationalized, "model", rationalized)
    pa = feasible_points(original, box, limits)
    pb = feasible_points(other, box, limits)
    if pa == pb:
        return None
    diff = set(pa).symmetric_difference(pb)
    return min(diff)


def substitution_zero_check(original: Model, point, limits: Limits = DEFAULT) -> bool:
    """True iff every rationalized-source equality of the original model
    evaluates to the canonical zero at the point (per exp group)."""
    by_name = {v.name: v for v in original.variables}
    pt = [Rat(v) for v in point]
    var_index = {v.name: i for i, v in enumerate(original.variables)}
    for c in original.constraints:
        if c.relation != "=" or c.is_rational():
            continue
        if any(not by_name[v].is_integer for v in c.support()):
            continue
        alphas = set()
        for coeff in list(c.coeffs.values()) + [c.rhs]:
            alphas.update(coeff.groups)
        for alpha in alphas:
            parts = []
            for v, coeff in c.coeffs.items():
                g = coeff.groups.get(alpha)
                if g is not None:
                    parts.append(field.scale(g, pt[var_index[v]]))
            rv = c.rhs.groups.get(alpha)
            if rv is not None:
                parts.append(field.negate(rv))
            if not parts:
                continue
            _, unified = field.unify_bases(parts, limits)
            total = unified[0]
            for u in unified[1:]:
                total = field.add(total, u)
            if not total.is_zero():
                return False
    return True


# -- seeded random model generation --------------------------------------------

_GENERATOR_RADICALS = ((2, 2), (2, 3), (3, 2), (3, 5))  # sqrt2 sqrt3 cbrt2 cbrt5


def random_model(seed: int, limits: Limits = DEFAULT) -> Model:
    """Small feasible radical model: <= 4 free integer variables, <= 3
    equalities, radicals from {sqrt 2, sqrt 3, cbrt 2, cbrt 5}, rational
    coefficients with numerators in [-5, 5] and denominators in [1, 4].
    Feasibility is arranged by seeding an integer point and solving for the
    right-hand sides."""
    rng = Random(seed)
    n = rng.randint(1, 4)
    k = rng.randint(1, 3)
    variables = tuple(
        Variable(name=f"x{i + 1}", is_integer=True, nonneg=False)
        for i in range(n)
    )
    seed_point = [rng.randint(-2, 2) for _ in range(n)]

    def rand_rat(allow_zero=True):
        num = rng.randint(-5, 5)
        if not allow_zero:
            while num == 0:
                num = rng.randint(-5, 5)
        return Rat(num, rng.randint(1, 4))

    def rand_coeff():
        value = field.RadicalNumber.from_rat(rand_rat())
        for deg, rad in rng.sample(_GENERATOR_RADICALS, rng.randint(1, 2)):
            if rng.random() < 0.5:
                continue
            root = canonicalize(Root(deg, rad), limits)
            term = field.scale(root, rand_rat(allow_zero=False))
            _, (a, b) = field.unify_bases([value, term], limits)
            value = field.minimize_basis(field.add(a, b))
        return Coefficient.from_radical(value)

    constraints = []
    for ci in range(k):
        coeffs = {}
        for i, v in enumerate(variables):
            if rng.random() < 0.75 or n == 1:
                c = rand_coeff()
                if not c.is_zero():
                    coeffs[v.name] = c
        rhs = Coefficient.zero()
        for vname, c in coeffs.items():
            i = int(vname[1:]) - 1
            rhs = rhs + c * Coefficient.from_rat(seed_point[i])
        constraints.append(
            Constraint(name=f"c{ci + 1}", coeffs=coeffs, relation="=", rhs=rhs)
        )
    objective = {
        v.name: Coefficient.from_rat(rand_rat(allow_zero=False))
        for v in variables
        if rng.random() < 0.8
    }
    return Model(
        variables=variables,
        sense="max",
        objective=objective,
        constraints=tuple(constraints),
    )
