"""Two-phase simplex over an exact ordered field, with certificates.

The pivoting core is generic over a small field-operations adapter, and is
instantiated with exact rationals and with radical numbers.  Bland's rule
plus exact arithmetic rules out cycling, so termination is unconditional.
Certificates (optimal point + dual sign pattern, feasible point + ray,
phase-1 value) are re-checkable by exact substitution: see verify_outcome.
"""

from dataclasses import dataclass

from . import field
from .config import DEFAULT, Limits
from .errors import DomainError, ModelError
from .model import Coefficient, Model
from .numeric import Rat, rat_to_str


class RationalOps:
    """Ordered-field operations on exact rationals."""

    name = "rational"

    def __init__(self, limits: Limits = DEFAULT):
        self.zero = Rat(0)
        self.one = Rat(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise DomainError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def sign(self, a):
        return -1 if a < 0 else (0 if a == 0 else 1)

    def from_radical(self, v):
        return v.rational_value()

    def text(self, a):
        return rat_to_str(a)


class RadicalOps:
    """Ordered-field operations on radical numbers over one shared basis."""

    name = "radical"

    def __init__(self, basis, limits: Limits = DEFAULT):
        self.basis = basis
        self.limits = limits
        self.zero = field.RadicalNumber(basis, {})
        self.one = field.RadicalNumber(basis, {(0,) * len(basis): Rat(1)})

    def _lift(self, v):
        if v.basis == self.basis:
            return v
        _, (lifted, _) = field.unify_bases([v, self.zero], self.limits)
        return lifted

    def add(self, a, b):
        return field.add(a, b)

    def sub(self, a, b):
        return field.add(a, field.negate(b))

    def mul(self, a, b):
        return field.multiply(a, b)

    def neg(self, a):
        return field.negate(a)

    def invert(self, a):
        return self._lift(field.invert(a, self.limits))

    def is_zero(self, a):
        return a.is_zero()

    def sign(self, a):
        return field.sign(a, self.limits)

    def from_radical(self, v):
        return self._lift(v)

    def text(self, a):
        return a.to_text()


@dataclass(frozen=True)
class Optimal:
    value: object
    point: dict
    basis: tuple
    kind: str = "optimal"


@dataclass(frozen=True)
class Unbounded:
    point: dict
    ray: dict
    kind: str = "unbounded"


@dataclass(frozen=True)
class Infeasible:
    certificate: object  # optimal phase-1 value (sum of artificials) > 0
    kind: str = "infeasible"


def outcome_to_dict(outcome, ops) -> dict:
    if isinstance(outcome, Optimal):
        return {
            "outcome": "optimal",
            "value": ops.text(outcome.value),
            "point": {v: ops.text(x) for v, x in sorted(outcome.point.items())},
            "basis": list(outcome.basis),
        }
    if isinstance(outcome, Unbounded):
        return {
            "outcome": "unbounded",
            "point": {v: ops.text(x) for v, x in sorted(outcome.point.items())},
            "ray": {v: ops.text(x) for v, x in sorted(outcome.ray.items())},
        }
    return {"outcome": "infeasible", "phase1_value": ops.text(outcome.certificate)}


# -- standard form -------------------------------------------------------------


class _Standard:
    """max c.x s.t. Ax = b, x >= 0 derived from a model.

    Columns: one per nonnegative variable, a +/- pair per free variable,
    one slack per inequality.  Minimization is folded into a negated
    objective (flip the reported value back).
    """

    def __init__(self, m: Model, ops, limits: Limits):
        self.model = m
        self.ops = ops
        cols = []  # (label, var_name | None, sgn)
        for v in m.variables:
            if v.nonneg:
                cols.append((v.name, v.name, 1))
            else:
                cols.append((v.name + "+", v.name, 1))
                cols.append((v.name + "-", v.name, -1))
        for i, c in enumerate(m.constraints):
            if c.relation != "=":
                cols.append((f"slack:{c.name or i}", None, 0))
        self.columns = cols
        col_index = {label: j for j, (label, _, _) in enumerate(cols)}
        n = len(cols)
        z = ops.zero
        self.a = []
        self.b = []
        for i, c in enumerate(m.constraints):
            row = [z] * n
            for j, (label, vname, sgn) in enumerate(cols):
                if vname is None:
                    continue
                coeff = c.coeffs.get(vname)
                if coeff is None or coeff.is_zero():
                    continue
                val = ops.from_radical(coeff.pure_part())
                row[j] = val if sgn > 0 else ops.neg(val)
            if c.relation != "=":
                lbl = f"slack:{c.name or i}"
                row[col_index[lbl]] = ops.one if c.relation == "<=" else ops.neg(ops.one)
            self.a.append(row)
            self.b.append(ops.from_radical(c.rhs.pure_part()))
        self.c = [z] * n
        flip = m.sense == "min"
        for j, (label, vname, sgn) in enumerate(cols):
            if vname is None:
                continue
            coeff = m.objective.get(vname)
            if coeff is None or coeff.is_zero():
                continue
            val = ops.from_radical(coeff.pure_part())
            if sgn < 0:
                val = ops.neg(val)
            if flip:
                val = ops.neg(val)
            self.c[j] = val

    def point_to_vars(self, x):
        out = {v.name: self.ops.zero for v in self.model.variables}
        for j, (label, vname, sgn) in enumerate(self.columns):
            if vname is None:
                continue
            term = x[j] if sgn > 0 else self.ops.neg(x[j])
            out[vname] = self.ops.add(out[vname], term)
        return out


def _pivot(rows, cost, basis, r, col, ops):
    inv = ops.invert(rows[r][col])
    rows[r] = [ops.mul(v, inv) for v in rows[r]]
    for i in range(len(rows)):
        if i == r:
            continue
        f = rows[i][col]
        if not ops.is_zero(f):
            rows[i] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(rows[i], rows[r])]
    f = cost[col]
    if not ops.is_zero(f):
        cost[:] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(cost, rows[r])]
    basis[r] = col


def _run_simplex(rows, cost, basis, ops, ncols):
    """Bland's rule; rows hold [b | A]; cost holds [obj | z - c]."""
    while True:
        col = None
        for j in range(1, ncols + 1):
            if ops.sign(cost[j]) < 0:
                col = j
                break
        if col is None:
            return "optimal", None
        leave = None
        best = None
        for i, row in enumerate(rows):
            if ops.sign(row[col]) > 0:
                ratio = ops.mul(row[0], ops.invert(row[col]))
                if best is None:
                    best, leave = ratio, i
                else:
                    d = ops.sign(ops.sub(ratio, best))
                    if d < 0 or (d == 0 and basis[i] < basis[leave]):
                        best, leave = ratio, i
        if leave is None:
            return "unbounded", col
        _pivot(rows, cost, basis, leave, col, ops)


def solve_lpr(m: Model, field_choice: str = "auto", limits: Limits = DEFAULT):
    """Solve the LP relaxation exactly; returns (outcome, ops).

    ``field_choice``: 'auto' picks the radical field iff irrational
    coefficients remain, 'rational' fails fast on irrational data,
    'radical' always uses radical arithmetic.
    """
    if m.has_exp():
        raise ModelError(
            "model has exp groups; rationalize before solving the relaxation"
        )
    irrational = not m.is_rational()
    if field_choice == "auto":
        field_choice = "radical" if irrational else "rational"
    if field_choice == "rational" and irrational:
        raise ModelError(
            "irrational coefficients present; use --field radical or "
            "rationalize first"
        )
    if field_choice == "rational":
        ops = RationalOps(limits)
    elif field_choice == "radical":
        values = [field.ZERO]
        for c in list(m.constraints):
            values.extend(co.pure_part() for co in c.coeffs.values())
            values.append(c.rhs.pure_part())
        values.extend(co.pure_part() for co in m.objective.values())
        values.append(m.objective_constant.pure_part())
        basis, _ = field.unify_bases(values, limits)
        ops = RadicalOps(basis, limits)
    else:
        raise DomainError(f"unknown field {field_choice!r}")
    return _solve_standard(_Standard(m, ops, limits)), ops


def _solve_standard(std: _Standard):
    ops = std.ops
    m = len(std.a)
    n = len(std.columns)
    # b >= 0 by row negation
    rows = []
    for i in range(m):
        b = std.b[i]
        row = [b] + list(std.a[i])
        if ops.sign(b) < 0:
            row = [ops.neg(v) for v in row]
        rows.append(row)
    # phase 1: artificial basis
    for i in range(m):
        for k in range(m):
            rows[i].append(ops.one if k == i else ops.zero)
    basis = [n + 1 + i for i in range(m)]
    cost = [ops.zero] * (1 + n + m)
    for j in range(1 + n):
        s = ops.zero
        for i in range(m):
            s = ops.add(s, rows[i][j])
        cost[j] = ops.neg(s)  # z - c for the phase-1 objective
    _run_simplex(rows, cost, basis, ops, n + m)
    phase1 = ops.neg(cost[0])
    if ops.sign(phase1) > 0:
        return Infeasible(certificate=phase1)
    # drive artificials out / drop redundant rows
    keep = []
    for i in range(m):
        if basis[i] <= n:
            keep.append(i)
            continue
        piv = next(
            (j for j in range(1, n + 1) if not ops.is_zero(rows[i][j])), None
        )
        if piv is None:
            continue  # redundant row
        _pivot(rows, cost, basis, i, piv, ops)
        keep.append(i)
    rows = [rows[i][: n + 1] for i in keep]
    basis = [basis[i] for i in keep]
    m2 = len(rows)
    # phase 2 cost row: z - c over the current basis
    cost = [ops.zero] + [ops.neg(std.c[j - 1]) for j in range(1, n + 1)]
    for i in range(m2):
        cb = std.c[basis[i] - 1]
        if not ops.is_zero(cb):
            cost = [ops.add(a, ops.mul(cb, b)) for a, b in zip(cost, rows[i])]
    status, col = _run_simplex(rows, cost, basis, ops, n)
    x = [ops.zero] * n
    for i in range(m2):
        x[basis[i] - 1] = rows[i][0]
    point = std.point_to_vars(x)
    if status == "unbounded":
        ray_std = [ops.zero] * n
        ray_std[col - 1] = ops.one
        for i in range(m2):
            ray_std[basis[i] - 1] = ops.neg(rows[i][col])
        ray = {v.name: ops.zero for v in std.model.variables}
        for j, (label, vname, sgn) in enumerate(std.columns):
            if vname is None:
                continue
            term = ray_std[j] if sgn > 0 else ops.neg(ray_std[j])
            ray[vname] = ops.add(ray[vname], term)
        return Unbounded(point=point, ray=ray)
    value = cost[0]
    if std.model.sense == "min":
        value = ops.neg(value)
    const = std.model.objective_constant.pure_part()
    if not const.is_zero():
        value = ops.add(value, ops.from_radical(const))
    labels = tuple(std.columns[b - 1][0] for b in basis)
    return Optimal(value=value, point=point, basis=labels)


# -- verification ---------------------------------------------------------------


def _point_value(c_coeffs, rhs, point, ops):
    """ops value of sum(coeff * x) - rhs at a point dict."""
    total = ops.neg(ops.from_radical(rhs.pure_part()))
    for v, coeff in c_coeffs.items():
        val = ops.mul(ops.from_radical(coeff.pure_part()), point[v])
        total = ops.add(total, val)
    return total


def _feasible(m, point, ops):
    for v in m.variables:
        if v.nonneg and ops.sign(point[v.name]) < 0:
            return False
    for c in m.constraints:
        s = ops.sign(_point_value(c.coeffs, c.rhs, point, ops))
        if c.relation == "=" and s != 0:
            return False
        if c.relation == "<=" and s > 0:
            return False
        if c.relation == ">=" and s < 0:
            return False
    return True


def _solve_square(rows, rhs, ops):
    d = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for k in range(d):
        piv = next((i for i in range(k, d) if not ops.is_zero(m[i][k])), None)
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        inv = ops.invert(m[k][k])
        m[k] = [ops.mul(v, inv) for v in m[k]]
        for i in range(d):
            if i != k and not ops.is_zero(m[i][k]):
                f = m[i][k]
                m[i] = [ops.sub(a, ops.mul(f, b)) for a, b in zip(m[i], m[k])]
    return [m[i][d] for i in range(d)]


def verify_outcome(m: Model, outcome, ops, limits: Limits = DEFAULT) -> bool:
    """Re-check a certificate by exact substitution (no tolerances).

    Optimal: point feasibility, objective value, and dual feasibility of
    the final basis (reduced costs all <= 0 for the internal max form).
    Unbounded: point feasibility plus A r (= / <= / >=) 0, r >= 0 on
    nonnegative variables, and a strictly improving objective direction.
    Infeasible: a deterministic re-solve must agree and report a positive
    phase-1 value.
    """
    if isinstance(outcome, Infeasible):
        if ops.sign(outcome.certificate) <= 0:
            return False
        redo, _ = solve_lpr(m, ops.name, limits)
        return isinstance(redo, Infeasible)
    if isinstance(outcome, Unbounded):
        if not _feasible(m, outcome.point, ops):
            return False
        ray = outcome.ray
        for v in m.variables:
            if v.nonneg and ops.sign(ray[v.name]) < 0:
                return False
        for c in m.constraints:
            s = ops.sign(_point_value(c.coeffs, Coefficient.zero(), ray, ops))
            if c.relation == "=" and s != 0:
                return False
            if c.relation == "<=" and s > 0:
                return False
            if c.relation == ">=" and s < 0:
                return False
        grad = ops.zero
        for v, coeff in m.objective.items():
            grad = ops.add(grad, ops.mul(ops.from_radical(coeff.pure_part()),
                                         ray[v]))
        want = 1 if m.sense == "max" else -1
        return ops.sign(grad) == want
    # Optimal
    if not _feasible(m, outcome.point, ops):
        return False
    obj = ops.from_radical(m.objective_constant.pure_part())
    for v, coeff in m.objective.items():
        obj = ops.add(obj, ops.mul(ops.from_radical(coeff.pure_part()),
                                   outcome.point[v]))
    if not ops.is_zero(ops.sub(obj, outcome.value)):
        return False
    # dual feasibility of the recorded basis on the standard form
    std = _Standard(m, ops, limits)
    label_to_col = {lbl: j for j, (lbl, _, _) in enumerate(std.columns)}
    try:
        bcols = [label_to_col[lbl] for lbl in outcome.basis]
    except KeyError:
        return False
    if len(bcols) > len(std.a):
        return False
    bmat = [[std.a[i][j] for j in bcols] for i in range(len(std.a))]
    # the recorded basis may cover fewer rows than the model has when
    # redundant rows were dropped; verify on the kept square subsystem
    if len(bcols) < len(std.a):
        rowsel = _independent_rows(bmat, ops, len(bcols))
        if rowsel is None:
            return False
        bmat = [bmat[i] for i in rowsel]
        cb = [std.c[j] for j in bcols]
        y = _solve_square(_transpose(bmat, ops), cb, ops)
        arows = [std.a[i] for i in rowsel]
    else:
        cb = [std.c[j] for j in bcols]
        y = _solve_square(_transpose(bmat, ops), cb, ops)
        arows = std.a
    if y is None:
        return False
    for j in range(len(std.columns)):
        yaj = ops.zero
        for i in range(len(arows)):
            yaj = ops.add(yaj, ops.mul(y[i], arows[i][j]))
        red = ops.sub(std.c[j], yaj)
        if ops.sign(red) > 0:
            return False
    return True


def _transpose(rows, ops):
    if not rows:
        return []
    return [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]


def _independent_rows(bmat, ops, want):
    """Indices of ``want`` linearly independent rows of bmat, or None."""
    if want == 0:
        return []
    rows = [list(r) for r in bmat]
    chosen = []
    pivots = []  # (col, row values) echelon memory
    for i, row in enumerate(rows):
        r = list(row)
        for col, prow in pivots:
            f = r[col]
            if not ops.is_zero(f):
                r = [ops.sub(a, ops.mul(f, b)) for a, b in zip(r, prow)]
        pcol = next((j for j, v in enumerate(r) if not ops.is_zero(v)), None)
        if pcol is None:
            continue
        inv = ops.invert(r[pcol])
        pivots.append((pcol, [ops.mul(v, inv) for v in r]))
        chosen.append(i)
        if len(chosen) == want:
            return chosen
    return None
