import pytest

from radrat.config import Limits
from radrat.errors import ResourceLimitError
from radrat.model import Coefficient, Constraint, Model, Variable
from radrat.oracle import (
    Box,
    check_equivalence,
    feasible_points,
    random_model,
    substitution_zero_check,
)
from radrat.parse import parse_model
from radrat.rationalize import rationalize_model

EXAMPLE1 = open("models/example1.mod", encoding="utf-8").read()


def test_example1_two_feasible_points():
    m = parse_model(EXAMPLE1)
    pts = feasible_points(m, Box.uniform(m, 0, 3))
    assert pts == [(0, 0, 0, 1), (1, 1, 0, 0)]


def test_sqrt2x_eq_1_empty():
    m = parse_model("var x1 >= 0 integer;\nmax x1;\ns.t. c: root(2,2)*x1 = 1;")
    assert feasible_points(m, Box.uniform(m, 0, 10)) == []


def test_rationalized_example1_same_points():
    m = parse_model(EXAMPLE1)
    rz, _ = rationalize_model(m)
    pts = feasible_points(rz.model, Box.uniform(rz.model, 0, 3))
    assert pts == [(0, 0, 0, 1), (1, 1, 0, 0)]
    assert check_equivalence(m, rz, Box.uniform(m, 0, 3)) is None


def test_counterexample_detection():
    base = Model(
        variables=(Variable("x1", True, True), Variable("x2", True, True)),
        sense="max",
        objective={},
        constraints=(
            Constraint(name="c", coeffs={"x1": Coefficient.from_rat(1),
                                         "x2": Coefficient.from_rat(-1)},
                       relation="=", rhs=Coefficient.from_rat(0)),
        ),
    )
    corrupted = Model(
        variables=base.variables,
        sense="max",
        objective={},
        constraints=(
            Constraint(name="c", coeffs={"x1": Coefficient.from_rat(1),
                                         "x2": Coefficient.from_rat(1)},
                       relation="=", rhs=Coefficient.from_rat(0)),
        ),
    )
    ce = check_equivalence(base, corrupted, Box(((0, 2), (0, 2))))
    assert ce == (1, 1)


def test_substitution_zero_check():
    m = parse_model(EXAMPLE1)
    assert substitution_zero_check(m, (1, 1, 0, 0))
    assert substitution_zero_check(m, (0, 0, 0, 1))
    assert not substitution_zero_check(m, (1, 0, 0, 1))
    pair = parse_model(
        "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
        "s.t. c: root(2,2)*x1 - root(2,2)*x2 + x1 + 3*x2 = 5;"
    )
    # (1+s2)x1 + (3-s2)x2 = 5 at x=(2,1): 2+2s2+3-s2 != 5... use the real pair
    golden = parse_model(
        "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
        "s.t. c: (1 + root(2,2))*x1 + (3 - 2*root(2,2))*x2 = 5;"
    )
    assert substitution_zero_check(golden, (2, 1))
    assert not substitution_zero_check(golden, (1, 1))


def test_box_volume_cap():
    m = parse_model(EXAMPLE1)
    with pytest.raises(ResourceLimitError):
        feasible_points(m, Box.uniform(m, 0, 999), Limits(enum_cap=1000))


def test_nonneg_vars_clip_box():
    m = parse_model("var x >= 0 integer;\nmax x;\ns.t. c: x <= 2;")
    pts = feasible_points(m, Box.uniform(m, -5, 5))
    assert pts == [(0,), (1,), (2,)]


def test_monotone_in_box_size():
    m = parse_model(EXAMPLE1)
    small = set(feasible_points(m, Box.uniform(m, 0, 1)))
    large = set(feasible_points(m, Box.uniform(m, 0, 3)))
    assert small <= large


def test_inequality_with_radical_filtering():
    # sqrt2 * x <= 3 over integers: x <= 2 (since 2*sqrt2 < 3 < 3*sqrt2)
    m = parse_model("var x >= 0 integer;\nmax x;\ns.t. c: root(2,2)*x <= 3;")
    pts = feasible_points(m, Box.uniform(m, 0, 6))
    assert pts == [(0,), (1,), (2,)]


def test_exp_constraints_enumeration():
    m = parse_model(
        "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
        "s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,3))*(x2 - 2) = 0;"
    )
    pts = feasible_points(m, Box.uniform(m, 0, 4))
    assert pts == [(1, 2)]


def test_exp_dependent_exponents_interval_refutation():
    # exponents sqrt2 and 2 sqrt2 are dependent: the split form cannot
    # decide; interval refutation must reject every nonvanishing point
    m = parse_model(
        "var x1 >= 0 integer;\nmax x1;\n"
        "s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,8))*(x1 - 1) = 0;"
    )
    pts = feasible_points(m, Box.uniform(m, 0, 4))
    assert pts == [(1,)]


def test_unbounded_ip_inequality_form():
    # the slack-variable variant: -sqrt2 (x1 - x2) <= 1 admits (t, 0, ...)
    m = parse_model(
        "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
        "s.t. c: -root(2,2)*(x1 - x2) <= 1;"
    )
    pts = feasible_points(m, Box.uniform(m, 0, 3))
    assert (3, 0) in pts and (0, 3) not in pts


def test_random_models_equivalence_smoke():
    for seed in range(12):
        m = random_model(seed)
        rz, _ = rationalize_model(m)
        box = Box.uniform(m, -5, 5)
        assert check_equivalence(m, rz, box) is None


def test_random_model_feasible_by_construction():
    for seed in range(20):
        m = random_model(seed)
        pts = feasible_points(m, Box.uniform(m, -5, 5))
        assert pts, f"seed {seed} produced an infeasible model"
