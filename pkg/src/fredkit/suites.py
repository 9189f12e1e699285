"""Named verification suites, shared by the CLI and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import GaussianRational, ext_diff
from .completion import decide_complete
from .expr import (
    Amplify,
    BackShift,
    DirectSum,
    Jordan,
    Shift,
    TriBlock,
    adjoint,
    amplified_shift_pair,
)
from .generate import random_expr, random_pair, random_triple
from .graph import lower_to_graph
from .invariants import (
    NotSemiFredholm,
    classify,
    normal_form,
    signature,
)
from .oracle import truncated_growth_check
from .regions import Region
from .spectra import completion_predicate, completion_spectrum, signature_at

__all__ = ["SuiteReport", "SUITES", "run_suite", "grid_points", "CATALOG_PAIRS"]


@dataclass
class SuiteReport:
    name: str
    cases: int
    seed: int
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, message: str) -> None:
        self.violations.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checked, {len(self.violations)} violations"
        return line + f" ({self.elapsed:.2f}s, seed {self.seed})"

    def to_json(self):
        return {
            "suite": self.name,
            "cases": self.cases,
            "seed": self.seed,
            "checked": self.checked,
            "passed": self.passed,
            "violations": self.violations[:20],
            "notes": self.notes,
            "elapsed_s": round(self.elapsed, 3),
        }


def _index(sig):
    return ext_diff(sig.alpha, sig.beta)


def suite_amplified_pair(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("amplified_pair", 1, seed)
    t = amplified_shift_pair()
    sig = signature(t)
    cls = classify(t)
    back, fwd = classify(Amplify(BackShift())), classify(Amplify(Shift()))
    rep.checked = 4
    if cls.semi_fredholm:
        rep.fail("inf(bshift) (+) inf(shift) classified as semi-Fredholm")
    if not (sig.alpha.is_inf and sig.beta.is_inf):
        rep.fail(f"expected α = β = ∞, got {sig}")
    if not back.pure_backward_shift:
        rep.fail("inf(bshift) is not reported as a pure backward shift")
    if not fwd.pure_shift:
        rep.fail("inf(shift) is not reported as a pure shift")
    try:
        normal_form(t)
        rep.fail("normal_form accepted a non-semi-Fredholm operator")
    except NotSemiFredholm:
        pass
    rep.notes = {"signature": sig.to_json()}
    return rep


def suite_index(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("index", cases, seed)
    rng = random.Random(seed)
    defined = 0
    for _ in range(cases):
        e = random_expr(rng)
        sig = signature(e)
        rep.checked += 1
        if not sig.semi_fredholm:
            continue
        try:
            lhs = ext_diff(sig.bsmul, sig.smul)
        except ValueError:
            rep.fail(f"{e}: b.s_mul - s_mul undefined for a semi-Fredholm operator")
            continue
        defined += 1
        if lhs != _index(sig):
            rep.fail(f"{e}: b.s_mul - s_mul = {lhs} but α - β = {_index(sig)}")
        if sig.index() != lhs:
            rep.fail(f"{e}: index() disagrees")
    rep.notes = {"semi_fredholm_cases": defined}
    return rep


def suite_browder_classes(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("browder_classes", cases, seed)
    rng = random.Random(seed)
    for _ in range(cases):
        e = random_expr(rng)
        c = classify(e)
        s = signature(e)
        rep.checked += 1
        sf = c.semi_fredholm
        checks = [
            ("shift-like vs upper semi-Browder", sf and s.bsmul == 0, c.upper_semi_browder),
            ("backward-shift-like vs lower semi-Browder", sf and s.smul == 0, c.lower_semi_browder),
            ("stationary vs Browder", sf and s.bsmul == 0 and s.smul == 0, c.browder),
        ]
        for name, left, right in checks:
            if left != right:
                rep.fail(f"{e}: {name}: {left} != {right} ({s})")
    return rep


# block-triangle transfer statements checked on random triples (A, C, B):
#   browder_a       A Browder: B upper semi-Browder iff M_C is
#   block_forces_a  M_C upper semi-Browder forces A upper semi-Browder
#   both_upper      A, B upper semi-Browder gives M_C upper semi-Browder
#   browder_block   M_C Browder forces A upper and B lower semi-Browder
#   two_of_three    two of A, B, M_C Browder gives the third
BLOCK_STATEMENTS = ("browder_a", "block_forces_a", "both_upper", "browder_block", "two_of_three")


def _block_class(a, c, b):
    return classify(TriBlock(a, c, b))


def suite_block_transfer(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("block_transfer", cases, seed)
    rng = random.Random(seed)
    fired = dict.fromkeys(BLOCK_STATEMENTS, 0)
    for _ in range(cases):
        a, c, b = random_triple(rng)
        ca, cb, cm = classify(a), classify(b), _block_class(a, c, b)
        rep.checked += 1
        tag = f"A={a}, C={c.to_json()}, B={b}"
        if ca.browder:
            fired["browder_a"] += 1
            # some C works iff every C works, so the drawn C decides it
            if cb.upper_semi_browder != cm.upper_semi_browder:
                rep.fail(f"browder_a: {tag}")
            if decide_complete("ab", a, b, with_witness=False).possible != cb.upper_semi_browder:
                rep.fail(f"browder_a decision: {tag}")
        if cm.upper_semi_browder:
            fired["block_forces_a"] += 1
            if not ca.upper_semi_browder:
                rep.fail(f"block_forces_a: {tag}")
        if ca.upper_semi_browder and cb.upper_semi_browder:
            fired["both_upper"] += 1
            if not cm.upper_semi_browder:
                rep.fail(f"both_upper: {tag}")
        if cm.browder:
            fired["browder_block"] += 1
            if not (ca.upper_semi_browder and cb.lower_semi_browder):
                rep.fail(f"browder_block: {tag}")
        flags = [ca.browder, cb.browder, cm.browder]
        if sum(flags) >= 2:
            fired["two_of_three"] += 1
            if not all(flags):
                rep.fail(f"two_of_three: {tag}")
    rep.notes = {"premise_hits": fired}
    return rep


def suite_browder_completion(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("browder_completion", cases, seed)
    rng = random.Random(seed)
    positive = 0
    for _ in range(cases):
        a, b = random_pair(rng)
        sa, sb = signature(a), signature(b)
        rep.checked += 1
        base = sa.upper_semi_browder and sb.lower_semi_browder
        by_mul = base and sb.bsmul == sa.smul
        by_dims = base and sa.alpha + sb.alpha == sa.beta + sb.beta
        if by_mul != by_dims:
            rep.fail(f"A={a}, B={b}: multiplicity test {by_mul} vs dimension test {by_dims}")
        v = decide_complete("b", a, b)
        if v.possible != by_mul:
            rep.fail(f"A={a}, B={b}: verdict {v.possible} vs multiplicity test {by_mul}")
        if v.possible:
            positive += 1
            g = lower_to_graph(v.witness.block)
            if not classify(v.witness.block).browder:
                rep.fail(f"A={a}, B={b}: witness block is not Browder ({g.census()})")
    rep.notes = {"positive_verdicts": positive}
    return rep


CATALOG_PAIRS = (
    ("U, U", Shift(), Shift()),
    ("U, U*", Shift(), BackShift()),
    ("U*, U", BackShift(), Shift()),
    ("U (+) J2, U*", DirectSum((Shift(), Jordan(2))), BackShift()),
)


def grid_points() -> list:
    """Exact sample points: a rational grid plus points on the unit circle."""
    coords = [Fraction(x, 4) for x in range(-6, 7, 2)] + [Fraction(3, 5), Fraction(-4, 5)]
    pts = [GaussianRational(x, y) for x in coords for y in coords]
    for a, b, c in ((3, 4, 5), (4, 3, 5), (5, 12, 13), (12, 5, 13), (8, 15, 17)):
        for sx in (1, -1):
            for sy in (1, -1):
                pts.append(GaussianRational(Fraction(sx * a, c), Fraction(sy * b, c)))
    pts.extend(GaussianRational(*p) for p in ((1, 0), (0, 1), (-1, 0), (0, -1), (0, 0), (2, 0), (0, -2), (Fraction(1, 3), Fraction(1, 3))))
    return list(dict.fromkeys(pts))


def suite_completion_spectra(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("completion_spectra", len(CATALOG_PAIRS), seed)
    pts = grid_points()
    for name, a, b in CATALOG_PAIRS:
        for kind in ("sigma", "ab", "sb", "b"):
            region = completion_spectrum(kind, a, b)
            for lam in pts:
                rep.checked += 1
                want = completion_predicate(kind, signature_at(a, lam), signature_at(b, lam))
                if region.member(lam) != want:
                    rep.fail(f"{kind} ({name}) at λ={lam}: region {not want}, formula {want}")
            if kind == "b" and region != completion_spectrum(kind, a, b, form="dims"):
                rep.fail(f"b ({name}): the two forms give different regions")
    if completion_spectrum("b", Shift(), BackShift()) != Region.circle(0, 1):
        rep.fail("(b, U, U*) is not the unit circle")
    if completion_spectrum("sigma", Shift(), Shift()) != Region.disk(0, 1):
        rep.fail("(sigma, U, U) is not the closed unit disk")
    rep.notes = {"grid_points": len(pts)}
    return rep


def suite_oracle(cases: int, seed: int, sizes=(8, 16, 64), k_max: int = 8) -> SuiteReport:
    rep = SuiteReport("oracle", cases, seed)
    rng = random.Random(seed)
    for _ in range(cases):
        e = random_expr(rng)
        for n in sizes:
            r = truncated_growth_check(e, n, k_max)
            rep.checked += 1
            if not r.match:
                rep.fail(f"{e} at n={n}: predicted {r.predicted_kernel}, computed {r.computed_kernel}")
    return rep


def suite_normal_form(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("normal_form", cases, seed)
    rng = random.Random(seed)
    drawn = 0
    while rep.checked < cases:
        e = random_expr(rng)
        drawn += 1
        sig = signature(e)
        if not sig.semi_fredholm:
            continue
        rep.checked += 1
        nf = normal_form(e)
        census = lower_to_graph(e).census()
        if nf.ind_t1 != sig.bsmul:
            rep.fail(f"{e}: ind(T1) = {nf.ind_t1} but b.s_mul = {sig.bsmul}")
        if nf.neg_ind_t2 != sig.smul:
            rep.fail(f"{e}: -ind(T2) = {nf.neg_ind_t2} but s_mul = {sig.smul}")
        if not isinstance(nf.h3_dim, int):
            rep.fail(f"{e}: dim H3 not finite")
        if min(nf.ind_t1, nf.neg_ind_t2).is_inf:
            rep.fail(f"{e}: both indices infinite")
        if nf.reconstruct() != census:
            rep.fail(f"{e}: reconstructed census {nf.reconstruct()} != {census}")
        # slice shapes: T1 right invertible, T2 left invertible, T3 nilpotent
        if nf.t1.forward or nf.t1.finite or nf.t2.backward or nf.t2.finite:
            rep.fail(f"{e}: slices have the wrong chain types")
    rep.notes = {"drawn": drawn}
    return rep


def suite_adjoint(cases: int, seed: int) -> SuiteReport:
    rep = SuiteReport("adjoint", cases, seed)
    rng = random.Random(seed)
    for _ in range(cases):
        e = random_expr(rng, allow_blocks=False)
        rep.checked += 1
        if signature(adjoint(e)) != signature(e).adjoint():
            rep.fail(f"{e}: adjoint signature is not the mirror")
    return rep


SUITES = {
    "amplified_pair": suite_amplified_pair,
    "index": suite_index,
    "browder_classes": suite_browder_classes,
    "block_transfer": suite_block_transfer,
    "browder_completion": suite_browder_completion,
    "completion_spectra": suite_completion_spectra,
    "oracle": suite_oracle,
    "normal_form": suite_normal_form,
    "adjoint": suite_adjoint,
}

DEFAULT_CASES = {
    "amplified_pair": 1,
    "index": 500,
    "browder_classes": 500,
    "block_transfer": 300,
    "browder_completion": 500,
    "completion_spectra": 4,
    "oracle": 200,
    "normal_form": 300,
    "adjoint": 200,
}


def run_suite(name: str, cases: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    cases = DEFAULT_CASES[name] if cases is None else cases
    start = time.perf_counter()
    rep = SUITES[name](cases, seed)
    rep.elapsed = time.perf_counter() - start
    return rep
