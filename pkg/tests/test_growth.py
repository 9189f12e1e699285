from fredkit.arith import INF, ExtNat
from fredkit.growth import GrowthSeq, growth_combine, growth_slope


def test_capped_sequence():
    # Jordan block of size 3: dim N(J^k) = min(k, 3)
    g = GrowthSeq.capped(3)
    assert [g(k) for k in range(1, 6)] == [ExtNat(v) for v in (1, 2, 3, 3, 3)]
    assert g.stabilization() == ExtNat(3)
    assert growth_slope(g) == ExtNat(0)


def test_linear_sequence():
    g = GrowthSeq.linear(2)
    assert g(4) == ExtNat(8)
    assert growth_slope(g) == ExtNat(2)
    assert g.stabilization() == INF


def test_zero_sequence_stabilizes_at_zero():
    assert GrowthSeq.zero().stabilization() == ExtNat(0)


def test_add_and_amplify():
    g = growth_combine(GrowthSeq.capped(2), GrowthSeq.linear(1), "add")
    assert [g(k) for k in (1, 2, 3)] == [ExtNat(2), ExtNat(4), ExtNat(5)]
    amp = growth_combine(GrowthSeq.capped(2), None, "amplify")
    assert amp(1) == INF
    assert growth_slope(amp) == INF
    assert growth_combine(GrowthSeq.zero(), None, "amplify") == GrowthSeq.zero()


def test_canonical_form_drops_trailing_tail_steps():
    assert GrowthSeq((1, 1, 1), 1) == GrowthSeq.linear(1)
