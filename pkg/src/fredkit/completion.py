"""Completion problems for ``M_C = (A C; 0 B)`` at λ = 0.

The existence predicates are exact conditions on the invariants of A and B.
Positive answers come with a basis-aligned corner C linking chain ends of B
to chain starts of A; the assembled block is then re-classified through its
own chain census, independently of the predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Infeasible
from .expr import Expr, TriBlock, WitnessMap, pretty_witness
from .graph import ChainCensus, explicit_pairing, lower_to_graph
from .invariants import FredholmSignature, Profile, census_profile, signature

__all__ = [
    "COMPLETION_TARGETS",
    "CompletionVerdict",
    "Witness",
    "decide_complete",
    "construct_witness",
]

# kind -> class the block must land in
COMPLETION_TARGETS = {
    "left_inv": "left_invertible",
    "invertible": "invertible",
    "ab": "upper_semi_browder",
    "sb": "lower_semi_browder",
    "b": "browder",
}
_ALIASES = {"sigma": "invertible"}


@dataclass(frozen=True)
class Witness:
    c: WitnessMap
    block: TriBlock
    census: ChainCensus
    signature: FredholmSignature

    def to_json(self):
        return {
            "C": self.c.to_json(),
            "C_text": pretty_witness(self.c),
            "census": self.census.to_json(),
            "signature": self.signature.to_json(),
        }


@dataclass(frozen=True)
class CompletionVerdict:
    kind: str
    possible: bool
    reason: dict = field(default_factory=dict)
    witness: Witness | None = None

    def to_json(self):
        return {
            "kind": self.kind,
            "possible": self.possible,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in COMPLETION_TARGETS:
        choices = ", ".join(COMPLETION_TARGETS)
        raise ValueError(f"unknown completion kind {kind!r}; expected one of {choices}")
    return kind


def _values(sa: FredholmSignature, sb: FredholmSignature) -> dict:
    return {
        "alpha(A)": sa.alpha.to_json(),
        "beta(A)": sa.beta.to_json(),
        "alpha(B)": sb.alpha.to_json(),
        "beta(B)": sb.beta.to_json(),
        "s_mul(A)": sa.smul.to_json(),
        "b.s_mul(B)": sb.bsmul.to_json(),
    }


def _decide(kind: str, sa: FredholmSignature, sb: FredholmSignature):
    """(possible, branch description, pairing rule)."""
    if kind == "left_inv":
        if not sa.left_invertible:
            return False, "A is not left invertible", None
        if sb.range_closed:
            return sb.alpha <= sa.beta, "R(B) closed: need α(B) ≤ β(A)", "pair-kernel"
        return sa.beta.is_inf, "R(B) not closed: need β(A) = ∞", "pair-kernel"
    if kind == "invertible":
        if not sa.left_invertible:
            return False, "A is not left invertible", None
        if not sb.right_invertible:
            return False, "B is not right invertible", None
        return sb.alpha == sa.beta, "need α(B) = β(A)", "pair-rays"
    if kind == "ab":
        if not sa.upper_semi_browder:
            return False, "A is not upper semi-Browder", None
        if not sb.upper_semi_fredholm:
            return sa.smul.is_inf, "B not upper semi-Fredholm: need s_mul(A) = ∞", "pair-kernel"
        return sb.bsmul <= sa.smul, "B upper semi-Fredholm: need b.s_mul(B) ≤ s_mul(A)", "pair-rays"
    if kind == "sb":
        if not sb.lower_semi_browder:
            return False, "B is not lower semi-Browder", None
        if not sa.lower_semi_fredholm:
            return sb.bsmul.is_inf, "A not lower semi-Fredholm: need b.s_mul(B) = ∞", "pair-cokernel"
        return sb.bsmul >= sa.smul, "A lower semi-Fredholm: need b.s_mul(B) ≥ s_mul(A)", "pair-rays"
    if kind == "b":
        if not sa.upper_semi_browder:
            return False, "A is not upper semi-Browder", None
        if not sb.lower_semi_browder:
            return False, "B is not lower semi-Browder", None
        return sb.bsmul == sa.smul, "need b.s_mul(B) = s_mul(A)", "pair-rays"
    raise AssertionError(kind)


def _build(kind: str, a: Expr, b: Expr, rule: str) -> Witness:
    pairs = explicit_pairing(rule, lower_to_graph(a), lower_to_graph(b))
    c = WitnessMap(rule=rule) if pairs is None else WitnessMap(tuple((s, t, 1) for s, t in pairs))
    block = TriBlock(a, c, b)
    g = lower_to_graph(block)
    census = g.census()
    p = census_profile(census)
    sig = Profile(p.alpha, p.beta, g.range_closed()).signature()
    if not getattr(sig, COMPLETION_TARGETS[kind]):
        raise AssertionError(f"witness for {kind} failed re-verification: {census}, {sig}")
    return Witness(c, block, census, sig)


def decide_complete(kind: str, a: Expr, b: Expr, with_witness: bool = True) -> CompletionVerdict:
    """Is there a C with ``M_C`` in the class named by ``kind``?"""
    kind = _kind(kind)
    sa, sb = signature(a), signature(b)
    ok, branch, rule = _decide(kind, sa, sb)
    reason = {"branch": branch, "values": _values(sa, sb)}
    if rule is not None:
        reason["pairing"] = rule
    witness = _build(kind, a, b, rule) if ok and with_witness else None
    return CompletionVerdict(kind, ok, reason, witness)


def construct_witness(kind: str, a: Expr, b: Expr) -> tuple[WitnessMap, TriBlock]:
    v = decide_complete(kind, a, b)
    if not v.possible:
        raise Infeasible(f"no corner C works for {kind}: {v.reason['branch']}")
    return v.witness.c, v.witness.block
