import pytest

from fredkit.arith import INF
from fredkit.completion import construct_witness, decide_complete
from fredkit.dsl import parse_expr
from fredkit.errors import Infeasible
from fredkit.expr import WitnessMap
from fredkit.graph import ChainCensus
from fredkit.invariants import classify


def decide(kind, a, b, **kw):
    return decide_complete(kind, parse_expr(a), parse_expr(b), **kw)


def test_left_invertible_completion_with_zero_corner():
    v = decide("left_inv", "shift", "shift")
    assert v.possible
    assert v.witness.c == WitnessMap()


def test_browder_completion_of_shift_and_backward_shift():
    v = decide("b", "shift", "bshift")
    assert v.possible
    assert v.witness.c == WitnessMap((((1,), (1,), 1),))
    assert v.witness.census == ChainCensus(bi=1)
    assert classify(v.witness.block).browder


def test_invertible_completion_needs_matching_defects():
    # beta(U^2) = 2 = alpha(U*^2), but beta(U (+) U) = 2 != 1 = alpha(U*)
    v = decide("invertible", "shift^2", "bshift^2")
    assert v.possible and v.witness.census == ChainCensus(bi=2)
    assert not decide("invertible", "shift (+) shift", "bshift").possible
    assert decide("sigma", "shift^2", "bshift^2").kind == "invertible"


def test_upper_browder_completion_branches():
    # B = inf(U*) is not upper semi-Fredholm, so s_mul(A) must be infinite
    v = decide("ab", "shift", "inf(bshift)")
    assert not v.possible
    assert v.reason["branch"].startswith("B not upper semi-Fredholm")
    v = decide("ab", "inf(shift)", "inf(bshift)")
    assert v.possible
    assert v.witness.c.rule == "pair-kernel"
    assert v.witness.census == ChainCensus(bi=INF)


def test_lower_browder_completion_with_nothing_to_pair():
    v = decide("sb", "bshift", "jordan(2)")
    assert v.possible and v.witness.c == WitnessMap()


def test_browder_completion_impossible_for_mismatch():
    v = decide("b", "shift^2", "bshift")
    assert not v.possible
    assert v.reason["values"]["s_mul(A)"] == 2


def test_construct_witness_raises_when_infeasible():
    with pytest.raises(Infeasible):
        construct_witness("b", parse_expr("shift"), parse_expr("shift"))
    c, block = construct_witness("b", parse_expr("shift (+) jordan(1)"), parse_expr("bshift"))
    assert classify(block).browder


def test_without_witness():
    v = decide("b", "shift", "bshift", with_witness=False)
    assert v.possible and v.witness is None


def test_unknown_kind():
    with pytest.raises(ValueError):
        decide("nope", "shift", "bshift")


def test_verdict_json():
    data = decide("b", "shift", "bshift").to_json()
    assert data["possible"] and data["witness"]["C_text"] == "{1 -> 1}"
