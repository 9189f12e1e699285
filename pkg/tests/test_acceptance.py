"""Acceptance criteria: one test per criterion, each printing a PASS/FAIL line.

All checks are exact (tolerance 0). Run directly with
``python3 tests/test_acceptance.py`` for the summary lines alone.
"""

import time


from fredkit.arith import gq
from fredkit.cli import run_command
from fredkit.dsl import parse_expr
from fredkit.invariants import classify, signature
from fredkit.suites import grid_points, run_suite

SEED = 20240607


def report(number, title, ok, detail, capsys=None):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def suite_criterion(number, title, name, cases, limit, capsys, seed=SEED):
    rep = run_suite(name, cases, seed)
    ok = rep.passed and rep.checked >= cases and rep.elapsed < limit
    detail = f"{rep.checked} checked, {len(rep.violations)} violations, {rep.elapsed:.2f}s < {limit}s"
    report(number, title, ok, detail, capsys)
    assert rep.passed, rep.violations[:5]
    assert rep.checked >= cases
    assert rep.elapsed < limit
    return rep


def test_criterion_1_amplified_pair(capsys):
    start = time.perf_counter()
    out = run_command(["classify", "inf(bshift) (+) inf(shift)"])
    back = classify(parse_expr("inf(bshift)"))
    fwd = classify(parse_expr("inf(shift)"))
    sig = signature(parse_expr("inf(bshift) (+) inf(shift)"))
    elapsed = time.perf_counter() - start
    ok = (
        out.code == 0
        and out.text == "not semi-Fredholm; α=∞, β=∞"
        and sig.alpha.is_inf
        and sig.beta.is_inf
        and back.pure_backward_shift
        and fwd.pure_shift
        and elapsed < 1.0
    )
    report(1, "inf(bshift) (+) inf(shift) is not semi-Fredholm", ok, f"{out.text!r}, {elapsed:.3f}s < 1s", capsys)
    assert out.text == "not semi-Fredholm; α=∞, β=∞"
    assert back.pure_backward_shift and not back.pure_shift
    assert fwd.pure_shift and not fwd.pure_backward_shift
    assert elapsed < 1.0


def test_criterion_2_index_identity(capsys):
    rep = suite_criterion(2, "index = b.s_mul - s_mul", "index", 500, 30, capsys)
    assert rep.notes["semi_fredholm_cases"] > 0


def test_criterion_3_browder_classes(capsys):
    suite_criterion(3, "multiplicity characterization of Browder classes", "browder_classes", 500, 30, capsys)


def test_criterion_4_block_transfer(capsys):
    rep = suite_criterion(4, "block-triangle transfer statements", "block_transfer", 300, 60, capsys)
    hits = rep.notes["premise_hits"]
    assert all(hits[k] > 0 for k in ("browder_a", "both_upper", "browder_block", "two_of_three")), hits


def test_criterion_5_browder_completion(capsys):
    rep = suite_criterion(5, "Browder completion: multiplicity test iff dimension test", "browder_completion", 500, 60, capsys)
    assert rep.notes["positive_verdicts"] > 0


def test_criterion_6_completion_spectra(capsys):
    pts = grid_points()
    assert len(pts) >= 100 and gq("3/5+4/5i") in pts
    # exact-equality checks are part of the suite
    suite_criterion(6, "completion-spectrum formulas", "completion_spectra", 4, 30, capsys)


def test_criterion_7_oracle(capsys):
    suite_criterion(7, "truncation oracle, n in {8, 16, 64}, k <= 8", "oracle", 200, 120, capsys)


def test_criterion_8_normal_form(capsys):
    suite_criterion(8, "normal-form audit", "normal_form", 300, 30, capsys)


if __name__ == "__main__":
    results = []
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn(None)
            results.append(True)
        except AssertionError:
            results.append(False)
    print(f"{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)
