from fractions import Fraction

import pytest

from fredkit.arith import INF, ExtNat, GaussianRational, dense_rank, ext, ext_arith, ext_diff, gq


def test_extnat_addition_absorbs_infinity():
    assert ExtNat(2) + ExtNat(3) == ExtNat(5)
    assert ExtNat(2) + INF == INF
    assert INF + INF == INF


def test_extnat_zero_times_infinity_is_zero():
    assert ExtNat(0) * INF == ExtNat(0)
    assert INF * ExtNat(0) == ExtNat(0)
    assert ExtNat(3) * INF == INF


def test_extnat_order_and_parsing():
    assert ExtNat(7) < INF
    assert min(INF, ExtNat(4)) == ExtNat(4)
    assert ExtNat("inf") == INF and ExtNat("∞") == INF and ExtNat("12") == ExtNat(12)
    assert str(INF) == "∞" and INF.to_json() == "inf" and ExtNat(3).to_json() == 3


def test_extnat_rejects_negative():
    with pytest.raises(ValueError):
        ExtNat(-1)


def test_ext_diff_is_partial():
    assert ext_diff(5, 2) == 3
    assert ext_diff(2, 5) == -3
    assert ext_diff(INF, 4) == "+inf"
    assert ext_diff(4, INF) == "-inf"
    with pytest.raises(ValueError):
        ext_diff(INF, INF)


def test_ext_arith_dispatch():
    assert ext_arith(0, INF, "mul") == ext(0)
    assert ext_arith(1, INF, "add") == INF


def test_gaussian_parse_and_print():
    z = GaussianRational.parse("3/5+4/5i")
    assert z == GaussianRational(Fraction(3, 5), Fraction(4, 5))
    assert z.abs2() == 1
    assert GaussianRational.parse("-i") == GaussianRational(0, -1)
    assert GaussianRational.parse("2i") == GaussianRational(0, 2)
    for text in ["3/5+4/5i", "i", "-i", "-1/2", "1+i", "2i", "0"]:
        assert str(GaussianRational.parse(text)) == text


def test_gaussian_field_operations():
    z = gq("1+i")
    assert z * z == gq("2i")
    assert z * z.conj() == gq(2)
    assert (gq(1) / z) * z == gq(1)
    assert not gq(0)


def test_gaussian_parse_rejects_garbage():
    with pytest.raises(ValueError):
        GaussianRational.parse("1+j")


def test_dense_rank():
    one, zero = gq(1), gq(0)
    assert dense_rank([[one, gq("i")], [gq("i"), gq(-1)]]) == 1
    assert dense_rank([[one, zero], [zero, one]]) == 2
