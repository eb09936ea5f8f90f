from random import Random

import pytest

from oracles import random_rational_lp, vertex_optimum
from radrat import field
from radrat.canon import Root, canonicalize
from radrat.errors import ModelError
from radrat.numeric import Rat
from radrat.parse import parse_model
from radrat.rationalize import rationalize_model
from radrat.simplex import (
    Infeasible,
    Optimal,
    Unbounded,
    outcome_to_dict,
    solve_lpr,
    verify_outcome,
)

EXAMPLE1 = open("models/example1.mod", encoding="utf-8").read()


def test_example1_original_unbounded_with_paper_ray():
    m = parse_model(EXAMPLE1)
    outcome, ops = solve_lpr(m, "auto")
    assert ops.name == "radical"
    assert isinstance(outcome, Unbounded)
    assert verify_outcome(m, outcome, ops)
    # ray proportional to (1, 0, sqrt2, 0)
    r = outcome.ray
    scale = field.invert(r["x1"])
    sqrt2 = ops.from_radical(canonicalize(Root(2, 2)))
    normalized = {v: ops.mul(ops._lift(scale), r[v]) for v in r}
    assert normalized["x1"] == ops.one
    assert normalized["x2"].is_zero()
    assert normalized["x3"] == sqrt2
    assert normalized["x4"].is_zero()


def test_example1_rationalized_optimal_one():
    m = parse_model(EXAMPLE1)
    rz, _ = rationalize_model(m)
    outcome, ops = solve_lpr(rz.model, "auto")
    assert ops.name == "rational"
    assert isinstance(outcome, Optimal)
    assert outcome.value == 1
    assert verify_outcome(rz.model, outcome, ops)
    d = outcome_to_dict(outcome, ops)
    assert d["outcome"] == "optimal" and d["value"] == "1"


def test_infeasible_empty_polyhedron():
    m = parse_model("var x1 >= 0;\nmax x1;\ns.t. a: x1 <= 0;\ns.t. b: x1 >= 1;")
    outcome, ops = solve_lpr(m)
    assert isinstance(outcome, Infeasible)
    assert ops.sign(outcome.certificate) > 0
    assert verify_outcome(m, outcome, ops)


def test_field_choice_rules():
    m = parse_model(EXAMPLE1)
    with pytest.raises(ModelError):
        solve_lpr(m, "rational")
    exp_model = parse_model("var x;\ns.t. c: exp(root(2,2))*x = 0;")
    with pytest.raises(ModelError):
        solve_lpr(exp_model)


def test_field_agnosticism():
    # a rational LP through the radical instantiation gives the same outcome
    for seed in (3, 8, 21):
        m = random_rational_lp(seed)
        a, ops_a = solve_lpr(m, "rational")
        b, ops_b = solve_lpr(m, "radical")
        assert type(a) is type(b)
        if isinstance(a, Optimal):
            assert b.value.is_rational() and b.value.rational_value() == a.value
            assert a.basis == b.basis


def test_broken_ray_rejected():
    m = parse_model(EXAMPLE1)
    outcome, ops = solve_lpr(m)
    assert isinstance(outcome, Unbounded)
    bad = Unbounded(
        point=outcome.point,
        ray={v: (ops.one if v == "x1" else ops.zero) for v in outcome.ray},
    )
    assert not verify_outcome(m, bad, ops)


def test_wrong_value_rejected():
    m = parse_model(EXAMPLE1)
    rz, _ = rationalize_model(m)
    outcome, ops = solve_lpr(rz.model)
    bad = Optimal(value=outcome.value + 1, point=outcome.point, basis=outcome.basis)
    assert not verify_outcome(rz.model, bad, ops)


def test_min_sense_and_constants():
    m = parse_model("var x >= 0;\nmin 2*x + 3;\ns.t. c: x >= 5/2;")
    outcome, ops = solve_lpr(m)
    assert isinstance(outcome, Optimal)
    assert outcome.value == Rat(8)  # 2*(5/2) + 3
    assert verify_outcome(m, outcome, ops)


def test_free_variable_split():
    m = parse_model("var x;\nmax x;\ns.t. c: x <= -3;")
    outcome, ops = solve_lpr(m)
    assert isinstance(outcome, Optimal)
    assert outcome.value == -3
    assert verify_outcome(m, outcome, ops)


def test_radical_lp_bounded():
    # max x subject to sqrt2 x <= 3: optimum 3/sqrt2 = 3 sqrt2 / 2
    m = parse_model("var x >= 0;\nmax x;\ns.t. c: root(2,2)*x <= 3;")
    outcome, ops = solve_lpr(m)
    assert isinstance(outcome, Optimal)
    expected = field.scale(ops.from_radical(canonicalize(Root(2, 2))), Rat(3, 2))
    assert outcome.value == expected
    assert verify_outcome(m, outcome, ops)


def test_against_vertex_oracle_random():
    rng = Random(0)
    optimal_seen = 0
    for seed in range(60, 80):
        m = random_rational_lp(seed)
        outcome, ops = solve_lpr(m, "rational")
        assert verify_outcome(m, outcome, ops)
        oracle = vertex_optimum(m)
        if isinstance(outcome, Optimal):
            optimal_seen += 1
            assert oracle[0] == "optimal"
            assert oracle[1] == outcome.value
        elif isinstance(outcome, Infeasible):
            assert oracle[0] == "infeasible"
        else:
            assert oracle[0] == "optimal"  # feasible; unbounded above
    assert optimal_seen >= 5
