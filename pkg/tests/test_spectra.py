import pytest

from fredkit.arith import gq
from fredkit.dsl import parse_expr
from fredkit.errors import UnsupportedForLambda
from fredkit.regions import Region
from fredkit.spectra import (
    completion_spectrum,
    piecewise_signature,
    signature_at,
    spectrum,
    spectrum_pointwise,
)
from fredkit.suites import grid_points

DISK, CIRCLE, ORIGIN = Region.disk(0, 1), Region.circle(0, 1), Region.point(0)


@pytest.mark.parametrize(
    "text, kind, expected",
    [
        ("shift", "sigma", DISK),
        ("shift", "ab", CIRCLE),
        ("shift", "sb", DISK),
        ("shift", "e", CIRCLE),
        ("shift", "l", CIRCLE),
        ("shift", "r", DISK),
        ("bshift", "ab", DISK),
        ("bshift", "sb", CIRCLE),
        ("bilateral", "sigma", CIRCLE),
        ("jordan(2)", "sigma", ORIGIN),
        ("jordan(2)", "b", Region.empty()),
        ("diag{0: 1, 1/2: inf}", "sigma", ORIGIN | Region.point(gq("1/2"))),
        ("diag{0: 1, 1/2: inf}", "e", Region.point(gq("1/2"))),
        ("shift(2, 1)", "sigma", Region.disk(1, 4)),
        ("shift^2", "sigma", DISK),
        ("inf(bshift) (+) inf(shift)", "sf_plus", DISK),
        ("shift (+) jordan(2)", "sigma", DISK),
    ],
)
def test_spectrum(text, kind, expected):
    assert spectrum(parse_expr(text), kind) == expected


@pytest.mark.parametrize(
    "text", ["shift (+) jordan(2)", "bshift(i) (+) shift(1/2, 1)", "inf(jordan(2)) (+) bilateral(2)"]
)
@pytest.mark.parametrize("kind", ["sigma", "ab", "sb", "b", "e", "sf_plus"])
def test_spectrum_agrees_with_pointwise(text, kind):
    e = parse_expr(text)
    region = spectrum(e, kind)
    for lam in grid_points():
        assert region.member(lam) == spectrum_pointwise(e, kind, lam), lam


def test_signature_at_inside_and_on_the_circle():
    s = signature_at(parse_expr("shift"), gq("1/2"))
    assert s.left_invertible and int(s.beta) == 1
    s = signature_at(parse_expr("shift"), gq("3/5+4/5i"))
    assert not s.range_closed


def test_piecewise_signature_matches_pointwise():
    e = parse_expr("shift (+) jordan(2)")
    pw = piecewise_signature(e)
    for lam in grid_points():
        assert pw.at(lam) == signature_at(e, lam)


def test_power_of_shifted_atom_is_unsupported():
    with pytest.raises(UnsupportedForLambda):
        spectrum(parse_expr("shift(1, 1)^2"))


@pytest.mark.parametrize(
    "kind, a, b, expected",
    [
        ("sigma", "shift", "shift", DISK),
        ("sigma", "shift", "bshift", CIRCLE),
        ("b", "shift", "bshift", CIRCLE),
        ("ab", "shift", "shift", CIRCLE),
        ("sb", "bshift", "shift", DISK),
        ("sigma", "shift (+) jordan(2)", "bshift", ORIGIN | CIRCLE),
    ],
)
def test_completion_spectrum(kind, a, b, expected):
    assert completion_spectrum(kind, parse_expr(a), parse_expr(b)) == expected


def test_both_forms_agree_on_catalog():
    for a, b in [("shift", "shift"), ("shift", "bshift"), ("bshift", "shift")]:
        for kind in ("sigma", "b"):
            x = completion_spectrum(kind, parse_expr(a), parse_expr(b), form="mul")
            y = completion_spectrum(kind, parse_expr(a), parse_expr(b), form="dims")
            assert x == y
