from random import Random

import pytest

from radrat import field
from radrat.canon import (
    Add,
    Div,
    Lit,
    Mul,
    Neg,
    Root,
    Sub,
    canonicalize,
    expr_enclosure,
    tree_enclosure,
)
from radrat.errors import DomainError
from radrat.numeric import Rat


def test_root48_display():
    x = canonicalize(Root(6, 48))
    assert x.basis.entries == ((2, 3), (3, 6))
    assert x.terms == {(2, 1): Rat(1)}  # (cbrt 2)^2 * (6th-root 3)


def test_root10_power_display():
    ten34 = canonicalize(Mul(Mul(Root(4, 10), Root(4, 10)), Root(4, 10)))
    assert ten34.basis.entries == ((2, 4), (5, 4))
    assert ten34.terms == {(3, 3): Rat(1)}  # (4th-root 2)^3 (4th-root 5)^3


def test_golden_combined_basis():
    e = Add(
        Sub(Lit(1), Mul(Lit(Rat(2, 3)), Root(6, 48))),
        Mul(Lit(Rat(1, 4)), Mul(Mul(Root(4, 10), Root(4, 10)), Root(4, 10))),
    )
    x = canonicalize(e)
    assert x.basis.entries == ((2, 12), (3, 6), (5, 4))
    assert x.basis.dim() == 288
    assert len(x.terms) == 3


def test_perfect_powers_collapse():
    assert canonicalize(Root(2, 4)).rational_value() == 2
    assert canonicalize(Root(3, 27)).rational_value() == 3
    assert canonicalize(Root(5, 1)).rational_value() == 1
    x = canonicalize(Root(6, 64))  # 64^(1/6) = 2
    assert x.is_rational() and x.rational_value() == 2


def test_division_and_errors():
    half = canonicalize(Div(Lit(1), Lit(2)))
    assert half.rational_value() == Rat(1, 2)
    inv = canonicalize(Div(Lit(1), Add(Lit(1), Root(2, 2))))
    check = field.multiply(
        *field.unify_bases([inv, canonicalize(Add(Lit(1), Root(2, 2)))])[1]
    )
    assert check.is_rational() and check.rational_value() == 1
    with pytest.raises(DomainError):
        canonicalize(Div(Lit(1), Sub(Root(2, 2), Root(2, 2))))
    with pytest.raises(DomainError):
        canonicalize(Root(1, 5))
    with pytest.raises(DomainError):
        canonicalize(Root(2, 0))


def _rand_expr(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Lit(Rat(rng.randint(-6, 6), rng.randint(1, 4)))
        return Root(rng.choice((2, 3, 4, 6)), rng.randint(1, 50))
    kind = rng.randrange(5)
    a = _rand_expr(rng, depth - 1)
    b = _rand_expr(rng, depth - 1)
    if kind == 0:
        return Add(a, b)
    if kind == 1:
        return Sub(a, b)
    if kind == 2:
        return Mul(a, b)
    if kind == 3:
        return Neg(a)
    den = b
    return Div(a, den)


def test_canonicalization_soundness_random():
    # canonical value and raw-tree interval evaluation overlap at every
    # precision tried
    from radrat.errors import ResourceLimitError

    rng = Random(2718)
    done = 0
    while done < 60:
        e = _rand_expr(rng, 3)
        try:
            x = canonicalize(e)
        except DomainError:  # division by canonical zero in the draw
            continue
        except ResourceLimitError:  # unlucky dimension blowup
            continue
        done += 1
        for prec in (24, 64, 128):
            raw = expr_enclosure(e, prec)
            canon_enc = (
                field.evaluate(x, prec) if x.terms else None
            )
            if canon_enc is None:
                assert raw.contains(Rat(0)) or raw.width() >= 0
                assert raw.lo <= 0 <= raw.hi
            else:
                assert raw.overlaps(canon_enc)


def test_tree_enclosure_basics():
    enc = tree_enclosure(Mul(Root(2, 2), Root(2, 2)), 64)
    assert enc.contains(Rat(2))
    enc = tree_enclosure(Lit(Rat(1, 3)), 40)
    assert enc.contains(Rat(1, 3))
