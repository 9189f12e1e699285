import random

import pytest

from fredkit.dsl import parse_dsl, parse_expr
from fredkit.errors import ArityDomain, DslSyntaxError
from fredkit.expr import (
    Adjoint,
    Amplify,
    BackShift,
    Diag,
    DirectSum,
    Jordan,
    Power,
    Shift,
    TriBlock,
    WitnessMap,
    amplified_shift_pair,
    pretty,
)
from fredkit.generate import random_expr, random_triple


def test_amplified_shift_pair():
    assert parse_expr("inf(bshift) (+) inf(shift)") == amplified_shift_pair()


def test_simple_sum():
    assert parse_expr("shift (+) jordan(2)") == DirectSum((Shift(1, 0), Jordan(2)))


def test_shift_arguments():
    assert parse_expr("bshift(1/2, -i)") == BackShift("1/2", "-i")
    assert parse_expr("shift (+) shift(2)") == DirectSum((Shift(), Shift(2)))


def test_precedence():
    assert parse_expr("shift (+) jordan(3)^2") == DirectSum((Shift(), Power(Jordan(3), 2)))
    assert parse_expr("(shift (+) jordan(3))^2") == Power(DirectSum((Shift(), Jordan(3))), 2)
    assert parse_expr("adj(shift)^2") == Power(Adjoint(Shift()), 2)
    assert parse_expr("inf(shift^2)") == Amplify(Power(Shift(), 2))


def test_diag_and_witness():
    assert parse_expr("diag{0: 2, 3/5+4/5i: inf}") == Diag({"0": 2, "3/5+4/5i": "inf"})
    e = parse_expr("tri(shift, {1 -> 1: 2}, bshift)")
    assert e == TriBlock(Shift(), WitnessMap((((1,), (1,), 2),)), BackShift())
    assert parse_expr("tri(inf(shift), pair-rays, inf(bshift))").c.rule == "pair-rays"


def test_round_trip_on_random_expressions():
    rng = random.Random(11)
    for _ in range(300):
        e = random_expr(rng)
        assert parse_expr(pretty(e)) == e
    for _ in range(100):
        a, c, b = random_triple(rng)
        e = TriBlock(a, c, b)
        assert parse_expr(pretty(e)) == e


def test_arity_errors():
    with pytest.raises(ArityDomain):
        parse_expr("jordan(0)")
    with pytest.raises(ArityDomain):
        parse_expr("shift(0)")


@pytest.mark.parametrize(
    "text, pos",
    [("shift (+)", 9), ("foo", 0), ("diag{1: x}", 8), ("shift^0", 6), ("jordan(2", 8), ("shift shift", 6)],
)
def test_positioned_syntax_errors(text, pos):
    with pytest.raises(DslSyntaxError) as info:
        parse_expr(text)
    assert info.value.pos == pos


def test_unknown_rule():
    with pytest.raises(DslSyntaxError):
        parse_expr("tri(shift, pair-nothing, bshift)")


def test_program_bindings_and_commands():
    prog = parse_dsl(
        "# demo\nlet A = shift (+) jordan(2)\nlet B = adj(A)\ncomplete --kind b A 'B (+) bilateral'\n"
    )
    assert prog.bindings["B"] == Adjoint(DirectSum((Shift(), Jordan(2))))
    assert prog.command == ["complete", "--kind", "b", "A", "B (+) bilateral"]
    assert parse_expr("B (+) bilateral", prog.bindings).parts[0] == prog.bindings["B"]


def test_program_errors():
    with pytest.raises(DslSyntaxError):
        parse_dsl("let A = foo")
    with pytest.raises(DslSyntaxError):
        parse_dsl("let shift = jordan(2)")
