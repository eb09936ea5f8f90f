"""Rewrite radical-coefficient equalities over integer variables into
equivalent all-rational systems.

Exponential groups with Q-independent exponents split into one pure-radical
equality each; then every monomial carried by a pure-radical equality yields
one rational row (its rational coordinates must balance on both sides, since
the integrality of the variables makes each monomial's coefficient rational
and a nonzero radical combination with rational coefficients cannot vanish).
Inequalities and constraints touching continuous variables pass through
untouched: a real-valued slack breaks the rationality argument, so rewriting
them would be unsound.
"""

import json
from dataclasses import dataclass

from . import field, linsolve
from .config import DEFAULT, Limits
from .errors import DependentExponentsError, ModelError
from .model import Coefficient, Constraint, Model
from .numeric import Rat


@dataclass(frozen=True)
class Provenance:
    row: object  # emitted constraint name
    source: object  # source constraint name or index
    alpha: object  # exp exponent (RadicalNumber) or None for passthrough
    monomial: object  # exponent tuple or None for passthrough
    passthrough: bool = False


@dataclass(frozen=True)
class TransformReport:
    basis: tuple  # ((p, q), ...)
    dimension: int
    rows_in: int
    rows_out: int
    exp_groups: int
    warnings: tuple
    infeasible_rows: tuple
    provenance: tuple

    def to_dict(self) -> dict:
        prov = []
        for p in self.provenance:
            entry = {"row": p.row, "source": p.source}
            if p.passthrough:
                entry["passthrough"] = True
            else:
                entry["alpha"] = p.alpha.to_text() if p.alpha is not None else "0"
                entry["monomial"] = list(p.monomial) if p.monomial else []
            prov.append(entry)
        return {
            "basis": [[p, q] for p, q in self.basis],
            "dimension": self.dimension,
            "rows_in": self.rows_in,
            "rows_out": self.rows_out,
            "exp_groups": self.exp_groups,
            "warnings": list(self.warnings),
            "infeasible_rows": list(self.infeasible_rows),
            "provenance": prov,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class RationalizedModel:
    model: Model
    provenance: tuple


def check_q_independence(alphas, limits: Limits = DEFAULT):
    """Q-linear independence of radical numbers, decided exactly.

    Stacks the canonical coordinate vectors over a unified basis and row
    reduces; coordinate independence is equivalent to independence of the
    numbers because distinct prime-root monomials never cancel over Q.
    Returns None when independent, else an integer witness tuple.
    """
    if not alphas:
        return None
    _, unified = field.unify_bases(list(alphas), limits)
    monos = sorted({m for x in unified for m in x.terms})
    vectors = [[x.terms.get(m, Rat(0)) for m in monos] for x in unified]
    return linsolve.row_reduce_witness(vectors)


def _split_with_alphas(c: Constraint, limits: Limits):
    """[(alpha, pure-radical Constraint), ...] with alpha = 0 first."""
    if c.relation != "=":
        raise ModelError(
            f"constraint {c.name or '?'}: only equalities can be exp-split"
        )
    alphas = set()
    for coeff in list(c.coeffs.values()) + [c.rhs]:
        alphas.update(coeff.groups)
    nonzero = sorted((a for a in alphas if not a.is_zero()),
                     key=lambda a: a.sort_key())
    if not nonzero:
        return [(field.ZERO, c)]
    witness = check_q_independence(nonzero, limits)
    if witness is not None:
        raise DependentExponentsError(tuple(nonzero), witness)
    ordered = ([field.ZERO] if field.ZERO in alphas else []) + nonzero
    out = []
    for alpha in ordered:
        coeffs = {}
        for v, coeff in c.coeffs.items():
            val = coeff.groups.get(alpha)
            if val is not None:
                coeffs[v] = Coefficient.from_radical(val)
        rhs_val = c.rhs.groups.get(alpha)
        rhs = (
            Coefficient.from_radical(rhs_val)
            if rhs_val is not None
            else Coefficient.zero()
        )
        if not coeffs and rhs.is_zero():
            continue
        out.append((alpha, Constraint(name=c.name, coeffs=coeffs,
                                      relation="=", rhs=rhs)))
    return out


def split_exp_groups(c: Constraint, limits: Limits = DEFAULT):
    """One pure-radical equality per exp group (the alpha = 0 group passes
    through as its own constraint).  Requires the nonzero exponents to be
    pairwise distinct and Q-linearly independent."""
    return [part for _, part in _split_with_alphas(c, limits)]


def _extract_monomial_rows(c: Constraint, limits: Limits):
    """[(monomial, rational Constraint), ...] in lexicographic order."""
    if c.has_exp():
        raise ModelError("exp groups must be split before monomial extraction")
    names = sorted(c.coeffs)
    values = [c.coeffs[v].pure_part() for v in names] + [c.rhs.pure_part()]
    _, unified = field.unify_bases(values, limits)
    monos = sorted({m for x in unified for m in x.terms})
    out = []
    for mono in monos:
        coords = {}
        for v, val in zip(names, unified):
            r = val.terms.get(mono)
            if r is not None and r != 0:
                coords[v] = r
        rhs = unified[-1].terms.get(mono, Rat(0))
        # normalize: first nonzero coefficient (variable-name order) positive,
        # and rhs >= 0 on coefficient-free rows ("0 = 1", never "0 = -1")
        lead = next((coords[v] for v in names if v in coords), rhs)
        if lead < 0:
            coords = {v: -r for v, r in coords.items()}
            rhs = -rhs
        out.append(
            (mono, Constraint(
                name=c.name,
                coeffs={v: Coefficient.from_rat(r) for v, r in coords.items()},
                relation="=",
                rhs=Coefficient.from_rat(rhs)))
        )
    return out


def rationalize_constraint(c: Constraint, variables=None,
                           limits: Limits = DEFAULT):
    """Rational rows equivalent (over integers) to a pure-radical equality.

    ``variables`` (when given) is used to enforce the integrality
    precondition: every variable in the support must be integer-typed.
    """
    if c.relation != "=":
        raise ModelError("only equalities can be rationalized")
    if variables is not None:
        by_name = {v.name: v for v in variables}
        for v in c.support():
            if not by_name[v].is_integer:
                raise ModelError(
                    f"constraint {c.name or '?'}: continuous variable {v} "
                    "in support; not rationalizable"
                )
    return [row for _, row in _extract_monomial_rows(c, limits)]


def _unique_name(base, used):
    name = base
    while name in used:
        name += "_"
    used.add(name)
    return name


def rationalize_model(m: Model, limits: Limits = DEFAULT):
    """Transform a model: equalities over integer variables are exp-split
    and monomial-extracted; everything else passes through (with warnings
    when irrational content is left untouched).

    Returns (RationalizedModel, TransformReport).  Contradictory emitted
    rows (0 = nonzero) are kept and flagged: they prove infeasibility and
    downstream solvers should see them.
    """
    by_name = {v.name: v for v in m.variables}
    out_rows = []
    provenance = []
    warnings = []
    infeasible = []
    seen_bodies = set()
    used_names = {c.name for c in m.constraints if c.name is not None}
    exp_groups = 0

    basis_values = []
    for c in m.constraints:
        for coeff in list(c.coeffs.values()) + [c.rhs]:
            for alpha, val in coeff.groups.items():
                basis_values.append(alpha)
                basis_values.append(val)
    basis, _ = field.unify_bases(basis_values, limits)

    for idx, c in enumerate(m.constraints):
        source = c.name if c.name is not None else idx
        if c.is_rational():
            out_rows.append(c)
            seen_bodies.add(c.body_key())
            provenance.append(Provenance(row=c.name, source=source,
                                         alpha=None, monomial=None,
                                         passthrough=True))
            continue
        if c.relation != "=":
            warnings.append(
                f"constraint {source}: inequality with irrational data "
                "passed through (a real-valued slack voids the rationality "
                "argument)"
            )
            out_rows.append(c)
            seen_bodies.add(c.body_key())
            provenance.append(Provenance(row=c.name, source=source,
                                         alpha=None, monomial=None,
                                         passthrough=True))
            continue
        if any(not by_name[v].is_integer for v in c.support()):
            warnings.append(
                f"constraint {source}: continuous variable in support; "
                "passed through unchanged"
            )
            out_rows.append(c)
            seen_bodies.add(c.body_key())
            provenance.append(Provenance(row=c.name, source=source,
                                         alpha=None, monomial=None,
                                         passthrough=True))
            continue
        parts = _split_with_alphas(c, limits)
        if c.has_exp():
            exp_groups += len(parts)
        base = c.name if c.name is not None else f"c{idx + 1}"
        seq = 0
        for alpha, part in parts:
            for mono, row in _extract_monomial_rows(part, limits):
                key = row.body_key()
                if key in seen_bodies:
                    continue
                seen_bodies.add(key)
                name = _unique_name(f"{base}_{seq}", used_names)
                seq += 1
                named = Constraint(name=name, coeffs=row.coeffs,
                                   relation="=", rhs=row.rhs)
                out_rows.append(named)
                provenance.append(Provenance(row=name, source=source,
                                             alpha=alpha, monomial=mono))
                if not named.coeffs and not named.rhs.is_zero():
                    infeasible.append(name)

    out_model = Model(
        variables=m.variables,
        sense=m.sense,
        objective=m.objective,
        constraints=tuple(out_rows),
        objective_constant=m.objective_constant,
    )
    report = TransformReport(
        basis=basis.entries,
        dimension=basis.dim(),
        rows_in=len(m.constraints),
        rows_out=len(out_rows),
        exp_groups=exp_groups,
        warnings=tuple(warnings),
        infeasible_rows=tuple(infeasible),
        provenance=tuple(provenance),
    )
    return RationalizedModel(model=out_model, provenance=tuple(provenance)), report
