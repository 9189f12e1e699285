import pytest

from fredkit.arith import INF, ExtNat
from fredkit.dsl import parse_expr
from fredkit.errors import NotLowerSemiBrowder, NotSemiFredholm, NotUpperSemiBrowder
from fredkit.graph import ChainCensus
from fredkit.invariants import (
    classify,
    decompose_lower_browder,
    decompose_upper_browder,
    kernel_growth,
    normal_form,
    normal_form4,
    samuel_multiplicities,
    signature,
)


def sig_tuple(text):
    s = signature(parse_expr(text))
    return (s.alpha, s.beta, s.range_closed, s.asc, s.des, s.smul, s.bsmul)


def t(*vals):
    out = []
    for v in vals:
        out.append(v if isinstance(v, bool) else (INF if v == "inf" else ExtNat(v)))
    return tuple(out)


@pytest.mark.parametrize(
    "text, expected",
    [
        # (alpha, beta, closed, asc, des, s_mul, b.s_mul), derived by hand from the chain census
        ("shift", t(0, 1, True, 0, "inf", 1, 0)),
        ("bshift", t(1, 0, True, "inf", 0, 0, 1)),
        ("bilateral", t(0, 0, True, 0, 0, 0, 0)),
        ("jordan(3)", t(1, 1, True, 3, 3, 0, 0)),
        ("bshift^4", t(4, 0, True, "inf", 0, 0, 4)),
        ("shift (+) bshift", t(1, 1, True, "inf", "inf", 1, 1)),
        ("inf(shift)", t(0, "inf", True, 0, "inf", "inf", 0)),
        ("tri(jordan(2), {1->2}, jordan(2))", t(1, 1, True, 4, 4, 0, 0)),
        # 2 + U is invertible: 0 lies outside the disk |z - 2| <= 1
        ("shift(1, 2)", t(0, 0, True, 0, 0, 0, 0)),
        # 1 + 2U: 0 is inside the disk |z - 1| <= 2, so left invertible with beta = 1
        ("shift(2, 1)", t(0, 1, True, 0, "inf", 1, 0)),
        # I + U: 0 on the boundary circle, injective with dense non-closed range
        ("shift(1, 1)", t(0, "inf", False, 0, "inf", "inf", 0)),
        ("trimat[[1,1],[0,0]]", t(1, 1, True, 1, 1, 0, 0)),
    ],
)
def test_signature(text, expected):
    assert sig_tuple(text) == expected


def test_kernel_growth_of_powers():
    alpha, beta = kernel_growth(parse_expr("bshift^2 (+) jordan(2)"))
    # alpha(T^k) = 2k + min(k, 2)
    assert [alpha(k) for k in (1, 2, 3)] == [ExtNat(3), ExtNat(6), ExtNat(8)]
    assert [beta(k) for k in (1, 2, 3)] == [ExtNat(1), ExtNat(2), ExtNat(2)]


def test_samuel_multiplicities_give_the_index():
    smul, bsmul = samuel_multiplicities(parse_expr("shift^3 (+) bshift (+) jordan(4)"))
    assert (smul, bsmul) == (ExtNat(3), ExtNat(1))
    assert signature(parse_expr("shift^3 (+) bshift (+) jordan(4)")).index() == -2


def test_amplified_shift_pair_is_not_semi_fredholm():
    c = classify(parse_expr("inf(bshift) (+) inf(shift)"))
    assert c.members() == []
    s = signature(parse_expr("inf(bshift) (+) inf(shift)"))
    assert s.alpha == INF and s.beta == INF and s.index() is None


def test_pure_shift_flags():
    assert classify(parse_expr("inf(shift)")).pure_shift
    assert classify(parse_expr("inf(bshift)")).pure_backward_shift
    assert not classify(parse_expr("shift (+) jordan(1)")).pure_shift
    # no census for non-graph expressions
    assert classify(parse_expr("shift(1, 2)")).pure_shift is None


def test_class_flags():
    c = classify(parse_expr("jordan(2) (+) shift"))
    assert c.upper_semi_browder and c.shift_like and not c.browder
    c = classify(parse_expr("jordan(2) (+) bilateral"))
    assert c.browder and c.stationary and not c.invertible


def test_normal_form_three_parts():
    nf = normal_form(parse_expr("bshift (+) shift (+) jordan(2)"))
    assert nf.t1 == ChainCensus(backward=1)
    assert nf.t2 == ChainCensus(forward=1)
    assert nf.t3 == ChainCensus(((2, 1),))
    assert (nf.ind_t1, nf.neg_ind_t2, nf.h3_dim) == (ExtNat(1), ExtNat(1), 2)


def test_normal_form_four_parts():
    nf = normal_form4(parse_expr("bshift (+) shift (+) jordan(2) (+) bilateral"))
    assert nf.t2 == ChainCensus(bi=1)
    assert nf.t3 == ChainCensus(forward=1)
    assert nf.h4_dim == 2


def test_normal_form_rejects_non_semi_fredholm():
    with pytest.raises(NotSemiFredholm):
        normal_form(parse_expr("inf(bshift) (+) inf(shift)"))


def test_upper_browder_split():
    d = decompose_upper_browder(parse_expr("jordan(2) (+) shift"))
    assert (d.p, d.h1_dim, d.beta_t2) == (2, 2, ExtNat(1))
    assert d.left_invertible == ChainCensus(forward=1)
    with pytest.raises(NotUpperSemiBrowder):
        decompose_upper_browder(parse_expr("bshift (+) jordan(2)"))


def test_lower_browder_split():
    d = decompose_lower_browder(parse_expr("jordan(3) (+) bshift"))
    assert (d.p, d.h2_dim, d.alpha_t1) == (3, 3, ExtNat(1))
    with pytest.raises(NotLowerSemiBrowder):
        decompose_lower_browder(parse_expr("shift"))


def test_signature_text():
    assert str(signature(parse_expr("shift"))) == (
        "α=0, β=1, closed, asc=0, des=∞, s_mul=1, b.s_mul=0"
    )
