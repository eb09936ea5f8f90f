from random import Random

import pytest

from radrat import field
from radrat.canon import Add, Lit, Mul, Root, canonicalize
from radrat.errors import DependentExponentsError, ModelError
from radrat.model import Coefficient, Constraint, Model, Variable
from radrat.numeric import Rat
from radrat.oracle import random_model
from radrat.parse import parse_model
from radrat.rationalize import (
    check_q_independence,
    rationalize_constraint,
    rationalize_model,
    split_exp_groups,
)

SQRT2 = canonicalize(Root(2, 2))
SQRT3 = canonicalize(Root(2, 3))


def C(v):
    if isinstance(v, field.RadicalNumber):
        return Coefficient.from_radical(v)
    return Coefficient.from_rat(v)


def test_independence_cases():
    assert check_q_independence([SQRT2, SQRT3]) is None
    two_sqrt2 = field.scale(SQRT2, 2)
    assert check_q_independence([SQRT2, two_sqrt2]) == (2, -1)
    one_plus = field.minimize_basis(canonicalize(Add(Lit(1), Root(2, 2))))
    assert check_q_independence([one_plus, SQRT2]) is None
    assert check_q_independence([]) is None
    # rational exponents are 1-dimensional over Q
    assert check_q_independence(
        [field.RadicalNumber.from_rat(Rat(1, 2)), field.RadicalNumber.from_rat(2)]
    ) == (4, -1)


def test_split_example():
    m = parse_model(
        "var x1;\nvar x2;\n"
        "s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,3))*(x2 - 2) = 0;"
    )
    parts = split_exp_groups(m.constraints[0])
    assert len(parts) == 2
    p1, p2 = parts
    assert set(p1.coeffs) == {"x1"}
    assert p1.coeffs["x1"].rational_value() == 1
    assert p1.rhs.rational_value() == 1
    assert set(p2.coeffs) == {"x2"}
    assert p2.rhs.rational_value() == 2


def test_split_alpha_zero_passthrough():
    c = Constraint(name="r", coeffs={"x": C(3)}, relation="=", rhs=C(1))
    m = Model(
        variables=(Variable("x", True),), sense="max", objective={},
        constraints=(c,),
    )
    assert split_exp_groups(c) == [c]


def test_split_dependent_exponents():
    two_sqrt2 = field.scale(SQRT2, 2)
    c = Constraint(
        name="c",
        coeffs={"x": Coefficient({SQRT2: field.ONE, two_sqrt2: field.ONE})},
        relation="=",
        rhs=C(0),
    )
    with pytest.raises(DependentExponentsError) as ei:
        split_exp_groups(c)
    assert ei.value.witness == (2, -1)
    assert ei.value.alphas == (SQRT2, two_sqrt2)


def test_split_rejects_inequalities():
    c = Constraint(name="c", coeffs={"x": C(SQRT2)}, relation="<=", rhs=C(1))
    with pytest.raises(ModelError):
        split_exp_groups(c)


def test_rationalize_constraint_example1_row():
    # x3 - sqrt2 x1 + sqrt2 x2 = 0  ->  {x3 = 0, x1 - x2 = 0}
    c = Constraint(
        name="c1",
        coeffs={"x1": C(field.negate(SQRT2)), "x2": C(SQRT2), "x3": C(1)},
        relation="=",
        rhs=C(0),
    )
    rows = rationalize_constraint(c)
    assert len(rows) == 2
    r0, r1 = rows
    assert set(r0.coeffs) == {"x3"} and r0.coeffs["x3"].rational_value() == 1
    assert r0.rhs.rational_value() == 0
    assert set(r1.coeffs) == {"x1", "x2"}
    assert r1.coeffs["x1"].rational_value() == 1
    assert r1.coeffs["x2"].rational_value() == -1
    assert r1.rhs.rational_value() == 0


def test_rationalize_constraint_golden_pair():
    # (1+sqrt2) x1 + (3-2 sqrt2) x2 = 5 -> {x1+3x2 = 5, x1-2x2 = 0}; the
    # seed point (2,1) satisfies the original exactly
    one_plus = field.minimize_basis(canonicalize(Add(Lit(1), Root(2, 2))))
    three_minus = field.minimize_basis(
        canonicalize(Add(Lit(3), Mul(Lit(-2), Root(2, 2))))
    )
    c = Constraint(
        name="g",
        coeffs={"x1": C(one_plus), "x2": C(three_minus)},
        relation="=",
        rhs=C(5),
    )
    rows = rationalize_constraint(c)
    assert len(rows) == 2
    by_rhs = {int(r.rhs.rational_value()): r for r in rows}
    r5, r0 = by_rhs[5], by_rhs[0]
    assert r5.coeffs["x1"].rational_value() == 1
    assert r5.coeffs["x2"].rational_value() == 3
    assert r0.coeffs["x1"].rational_value() == 1
    assert r0.coeffs["x2"].rational_value() == -2
    # substitution check at (2, 1)
    val = field.add(
        *field.unify_bases([field.scale(one_plus, 2), three_minus])[1]
    )
    assert val.is_rational() and val.rational_value() == 5
    assert 2 + 3 * 1 == 5 and 2 - 2 * 1 == 0


def test_rationalize_constraint_infeasible_row():
    c = Constraint(name="c", coeffs={"x1": C(SQRT2)}, relation="=", rhs=C(1))
    rows = rationalize_constraint(c)
    assert len(rows) == 2
    flat = {(tuple(sorted(r.coeffs)), str(r.rhs.rational_value())) for r in rows}
    assert ((), "1") in flat  # 0 = 1
    assert (("x1",), "0") in flat  # x1 = 0


def test_rationalize_constraint_continuous_rejected():
    c = Constraint(name="c", coeffs={"x": C(SQRT2)}, relation="=", rhs=C(0))
    with pytest.raises(ModelError):
        rationalize_constraint(c, variables=(Variable("x", is_integer=False),))
    rationalize_constraint(c, variables=(Variable("x", is_integer=True),))


def test_rationalize_model_example1():
    m = parse_model(open("models/example1.mod", encoding="utf-8").read())
    rz, report = rationalize_model(m)
    rows = {
        (
            tuple(sorted((v, str(c.rational_value())) for v, c in r.coeffs.items())),
            str(r.rhs.rational_value()),
        )
        for r in rz.model.constraints
    }
    assert rows == {
        ((("x3", "1"),), "0"),
        ((("x1", "1"), ("x2", "-1")), "0"),
        ((("x2", "1"), ("x4", "1")), "1"),
    }
    assert report.rows_in == 2 and report.rows_out == 3
    assert report.basis == ((2, 2),) and report.dimension == 2
    assert not report.warnings and not report.infeasible_rows
    assert len(report.provenance) == 3


def test_rationalize_model_identity_on_rational():
    src = "var x >= 0 integer;\nvar y;\nmax x;\ns.t. a: x + y <= 4;\ns.t. b: x - y = 1;"
    m = parse_model(src)
    rz, report = rationalize_model(m)
    assert rz.model == m
    assert report.warnings == ()
    assert report.rows_in == report.rows_out == 2


def test_rationalize_model_inequality_warning():
    src = "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\ns.t. c: -root(2,2)*(x1 - x2) <= 1;"
    m = parse_model(src)
    rz, report = rationalize_model(m)
    assert rz.model.constraints == m.constraints
    assert len(report.warnings) == 1
    assert "inequality" in report.warnings[0]


def test_rationalize_model_continuous_warning():
    src = "var x >= 0;\nmax x;\ns.t. c: root(2,2)*x = 1;"
    m = parse_model(src)
    rz, report = rationalize_model(m)
    assert rz.model.constraints == m.constraints
    assert any("continuous" in w for w in report.warnings)


def test_rationalize_model_infeasible_flag():
    m = parse_model("var x1 >= 0 integer;\nmax x1;\ns.t. c: root(2,2)*x1 = 1;")
    rz, report = rationalize_model(m)
    assert report.infeasible_rows == ("c_0",)
    kept = [c for c in rz.model.constraints if c.name == "c_0"]
    assert kept and not kept[0].coeffs
    assert kept[0].rhs.rational_value() == 1


def test_rationalize_model_dedup():
    # sqrt2 x + x = sqrt2 + 1 emits x = 1 twice across monomials; once kept
    src = (
        "var x >= 0 integer;\nmax x;\n"
        "s.t. c: root(2,2)*x + x = root(2,2) + 1;\n"
        "s.t. d: 2*x + root(2,3)*x = 2 + root(2,3);\n"
    )
    m = parse_model(src)
    rz, report = rationalize_model(m)
    bodies = [r.body_key() for r in rz.model.constraints]
    assert len(bodies) == len(set(bodies))
    assert report.rows_out < 4


def test_exp_model_end_to_end():
    m = parse_model(
        "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
        "s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,3))*(x2 - 2) = 0;"
    )
    rz, report = rationalize_model(m)
    rows = {
        (
            tuple(sorted((v, str(c.rational_value())) for v, c in r.coeffs.items())),
            str(r.rhs.rational_value()),
        )
        for r in rz.model.constraints
    }
    assert rows == {((("x1", "1"),), "1"), ((("x2", "1"),), "2")}
    assert report.exp_groups == 2


def test_redundancy_property_random():
    # any rational point satisfying all emitted rows of a source equality
    # makes the source collapse to canonical zero
    rng = Random(77)
    for seed in range(25):
        m = random_model(seed)
        rz, _ = rationalize_model(m)
        # solve emitted rows for a couple of boxed integer points brute force
        from radrat.oracle import Box, feasible_points

        pts = feasible_points(rz.model, Box.uniform(rz.model, -3, 3))
        from radrat.oracle import substitution_zero_check

        for p in pts[:5]:
            assert substitution_zero_check(m, p)


def test_determinism():
    m = parse_model(open("models/example1.mod", encoding="utf-8").read())
    r1 = rationalize_model(m)[1].to_json()
    r2 = rationalize_model(m)[1].to_json()
    assert r1 == r2
