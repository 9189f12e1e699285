import pytest

from fredkit.arith import INF, ExtNat
from fredkit.dsl import parse_expr
from fredkit.errors import ArityDomain, IndexOutOfSpace, NotGraphExpressible
from fredkit.expr import (
    Amplify,
    BackShift,
    DirectSum,
    Jordan,
    Shift,
    TriBlock,
    TriMatrix,
    WitnessMap,
    adjoint,
    assemble_block,
)
from fredkit.graph import ChainCensus, explicit_pairing, lower_to_graph


def census(text):
    return lower_to_graph(parse_expr(text)).census()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("shift", ChainCensus(forward=1)),
        ("bshift", ChainCensus(backward=1)),
        ("bilateral", ChainCensus(bi=1)),
        ("jordan(3)", ChainCensus(((3, 1),))),
        ("diag{0: 2, 1: 1}", ChainCensus(((1, 2),), loops=1)),
        # U^3 splits into three shifted copies of U, one per residue class
        ("shift^3", ChainCensus(forward=3)),
        # J5^2 splits by parity: chains e5 -> e3 -> e1 and e4 -> e2
        ("jordan(5)^2", ChainCensus(((2, 1), (3, 1)))),
        ("inf(shift)", ChainCensus(forward=INF)),
        ("adj(shift)", ChainCensus(backward=1)),
        ("inf(bshift) (+) inf(shift)", ChainCensus(forward=INF, backward=INF)),
        ("trimat[[0,1,0],[0,0,1],[0,0,0]]", ChainCensus(((3, 1),))),
        # C sends the kernel vector of U* to the start of U: one bilateral chain
        ("tri(shift, {1->1}, bshift)", ChainCensus(bi=1)),
        # C glues two 2-chains into one 4-chain
        ("tri(jordan(2), {1->2}, jordan(2))", ChainCensus(((4, 1),))),
        ("tri(jordan(2), {}, jordan(2))", ChainCensus(((2, 2),))),
    ],
)
def test_census(text, expected):
    assert census(text) == expected


def test_census_adjoint_swaps_rays():
    c = ChainCensus(((2, 1),), forward=3, backward=1)
    assert c.adjoint() == ChainCensus(((2, 1),), forward=1, backward=3)


def test_census_amplify_multiplies_counts():
    assert census("inf(jordan(2) (+) shift)") == ChainCensus(((2, INF),), forward=INF)


def test_range_closed_for_graph_expressions():
    assert lower_to_graph(parse_expr("shift (+) jordan(4)")).range_closed()


def test_succ_follows_the_shift():
    g = lower_to_graph(Shift())
    assert g.succ((1,)) == (2,)
    g = lower_to_graph(BackShift())
    assert g.succ((2,)) == (1,)


def test_non_graph_atoms_are_rejected():
    with pytest.raises(NotGraphExpressible):
        lower_to_graph(Shift(1, 2))
    with pytest.raises(NotGraphExpressible):
        lower_to_graph(TriMatrix(((1, 1), (0, 0))))


def test_atom_domains():
    with pytest.raises(ArityDomain):
        Jordan(0)
    with pytest.raises(ArityDomain):
        Shift(0)
    with pytest.raises(ArityDomain):
        DirectSum((Shift(),))
    with pytest.raises(ArityDomain):
        TriMatrix(((1, 0), (1, 1)))


def test_witness_must_address_real_vectors():
    with pytest.raises(IndexOutOfSpace):
        assemble_block(Shift(), WitnessMap((((0,), (1,), 1),)), BackShift())
    with pytest.raises(IndexOutOfSpace):
        assemble_block(Jordan(2), WitnessMap((((3,), (1,), 1),)), Jordan(2))


def test_adjoint_normal_form():
    assert adjoint(Shift("i")) == BackShift("-i")
    assert adjoint(Amplify(Shift())) == Amplify(BackShift())
    assert adjoint(TriMatrix(((0, 2), (0, 0)))) == TriMatrix(((0, 2), (0, 0)))
    with pytest.raises(ArityDomain):
        adjoint(TriBlock(Shift(), WitnessMap(), BackShift()))


def test_explicit_pairing_rays():
    a, b = lower_to_graph(Shift()), lower_to_graph(BackShift())
    assert explicit_pairing("pair-rays", a, b) == [((1,), (1,))]
    # infinitely many rays cannot be listed
    a, b = lower_to_graph(Amplify(Shift())), lower_to_graph(Amplify(BackShift()))
    assert explicit_pairing("pair-rays", a, b) is None


def test_extnat_counts_are_canonical():
    assert ChainCensus(((2, 1), (2, 2))) == ChainCensus(((2, ExtNat(3)),))
