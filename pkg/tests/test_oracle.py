import random

import pytest

from fredkit.arith import gq
from fredkit.dsl import parse_expr
from fredkit.errors import NotGraphExpressible
from fredkit.generate import random_expr
from fredkit.oracle import apply, apply_adjoint, exact_rank, truncate, truncated_growth_check, window


def test_truncated_shift_matrix():
    m = truncate(parse_expr("shift"), 3)
    one, zero = gq(1), gq(0)
    assert m == [[zero, zero, zero], [one, zero, zero], [zero, one, zero]]


def test_exact_rank():
    assert exact_rank([{0: gq(1), 1: gq("i")}, {0: gq("i"), 1: gq(-1)}]) == 1
    assert exact_rank([{0: gq("1/2")}, {1: gq("3/5+4/5i")}]) == 2
    assert exact_rank([]) == 0


def test_growth_of_jordan_plus_shift():
    # J3 is kept whole; the compressed shift on 8 vectors is a nilpotent 8-chain
    r = truncated_growth_check(parse_expr("jordan(3) (+) shift"), 8, 4)
    assert r.match
    assert r.computed_kernel == (2, 4, 6, 7)
    assert r.runs == (3, 8)


@pytest.mark.parametrize("n", [8, 16])
def test_amplified_pair_truncation(n):
    assert truncated_growth_check(parse_expr("inf(bshift) (+) inf(shift)"), n, 3).match


def test_window_sizes():
    assert len(window(parse_expr("inf(jordan(2))"), 4)) == 8
    assert len(window(parse_expr("diag{0: 2, 1: inf}"), 5)) == 7


def test_rule_witness_is_rejected():
    e = parse_expr("tri(inf(shift), pair-rays, inf(bshift))")
    with pytest.raises(NotGraphExpressible):
        truncated_growth_check(e, 4, 2)


def test_adjoint_is_the_conjugate_transpose():
    rng = random.Random(7)
    for _ in range(40):
        e = random_expr(rng, 3)
        labels = window(e, 4)
        for x in labels:
            col = apply(e, x)
            for y in labels:
                assert col.get(y, gq(0)) == apply_adjoint(e, y).get(x, gq(0)).conj()
