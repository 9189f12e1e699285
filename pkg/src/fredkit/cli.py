"""Command-line front end: ``fredkit <command> ...``.

Exit codes: 0 on success (including a negative completion verdict), 1 when
the mathematics rules the request out (for example the normal form of a
non-semi-Fredholm operator, or a failed verification suite), 2 on parse or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .completion import COMPLETION_TARGETS, decide_complete
from .dsl import DslProgram, parse_dsl, parse_expr
from .errors import (
    ArityDomain,
    DslSyntaxError,
    FredkitError,
    IndexOutOfSpace,
    InvalidWitness,
)
from .expr import pretty, pretty_witness
from .invariants import classify, kernel_growth, normal_form, normal_form4, signature
from .spectra import COMPLETION_KINDS, SPECTRUM_KINDS, completion_spectrum, spectrum
from .suites import DEFAULT_CASES, SUITES, run_suite

__all__ = ["main", "run_command", "run_program", "CommandResult", "UsageError"]

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2
_INPUT_ERRORS = (DslSyntaxError, ArityDomain, InvalidWitness, IndexOutOfSpace)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandResult:
    text: str
    data: dict
    code: int = EXIT_OK


_DISPLAY = {
    "upper_semi_fredholm": "upper semi-Fredholm",
    "lower_semi_fredholm": "lower semi-Fredholm",
    "semi_fredholm": "semi-Fredholm",
    "fredholm": "Fredholm",
    "browder": "Browder",
    "upper_semi_browder": "upper semi-Browder",
    "lower_semi_browder": "lower semi-Browder",
    "shift_like": "shift-like",
    "backward_shift_like": "backward-shift-like",
}


def _flag_names(members) -> str:
    return ", ".join(_DISPLAY.get(m, m.replace("_", " ")) for m in members)


def _classify(args, env) -> CommandResult:
    e = parse_expr(args.expr, env)
    cls, sig = classify(e), signature(e)
    head = _flag_names(cls.members()) if cls.semi_fredholm else "not semi-Fredholm"
    text = f"{head}; α={sig.alpha}, β={sig.beta}"
    data = {"expr": pretty(e), "classes": cls.members(), "flags": cls.to_json(),
            "signature": sig.to_json()}
    return CommandResult(text, data)


def _invariants(args, env) -> CommandResult:
    e = parse_expr(args.expr, env)
    sig = signature(e)
    alpha, beta = kernel_growth(e)
    rows = [(k, alpha(k), beta(k)) for k in range(1, args.powers + 1)]
    lines = [str(sig), f"index: {'undefined' if sig.index() is None else sig.index()}"]
    lines.append("k  α(T^k)  β(T^k)")
    lines += [f"{k:<2} {a!s:<7} {b!s}" for k, a, b in rows]
    data = {
        "expr": pretty(e),
        "signature": sig.to_json(),
        "index": sig.index(),
        "powers": [{"k": k, "alpha": a.to_json(), "beta": b.to_json()} for k, a, b in rows],
    }
    return CommandResult("\n".join(lines), data)


def _normal_form(args, env) -> CommandResult:
    e = parse_expr(args.expr, env)
    if args.four:
        nf = normal_form4(e)
        parts = {"T1": nf.t1, "T2": nf.t2, "T3": nf.t3, "T4": nf.t4}
        extra = {"ind_T1": nf.ind_t1, "minus_ind_T3": nf.neg_ind_t3, "dim_H4": nf.h4_dim}
    else:
        nf = normal_form(e)
        parts = {"T1": nf.t1, "T2": nf.t2, "T3": nf.t3}
        extra = {"ind_T1": nf.ind_t1, "minus_ind_T2": nf.neg_ind_t2, "dim_H3": nf.h3_dim}
    lines = [f"{k}: {v}" for k, v in parts.items()]
    lines.append(", ".join(f"{k}={v}" for k, v in extra.items()))
    data = {"expr": pretty(e)}
    data.update({k: v.to_json() for k, v in parts.items()})
    data.update({k: v if isinstance(v, int) else v.to_json() for k, v in extra.items()})
    return CommandResult("\n".join(lines), data)


def _spectrum(args, env) -> CommandResult:
    e = parse_expr(args.expr, env)
    r = spectrum(e, args.kind)
    data = {"expr": pretty(e), "kind": args.kind, "description": r.describe(), "region": r.to_json()}
    return CommandResult(r.describe(), data)


def _meet_spectrum(args, env) -> CommandResult:
    a, b = parse_expr(args.a, env), parse_expr(args.b, env)
    r = completion_spectrum(args.kind, a, b, form=args.form)
    data = {"A": pretty(a), "B": pretty(b), "kind": args.kind, "description": r.describe(),
            "region": r.to_json()}
    return CommandResult(r.describe(), data)


def _complete(args, env) -> CommandResult:
    a, b = parse_expr(args.a, env), parse_expr(args.b, env)
    v = decide_complete(args.kind, a, b)
    if v.possible:
        w = v.witness
        text = f"possible; C = {pretty_witness(w.c)}\ncensus of M_C: {w.census}\n{w.signature}"
    else:
        text = f"impossible; {v.reason['branch']}"
    data = {"A": pretty(a), "B": pretty(b)}
    data.update(v.to_json())
    return CommandResult(text, data)


def _verify(args, env) -> CommandResult:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, args.cases, args.seed) for n in names]
    lines = [r.summary() for r in reports]
    for r in reports:
        lines += [f"  {v}" for v in r.violations[:5]]
    ok = all(r.passed for r in reports)
    data = {"passed": ok, "suites": [r.to_json() for r in reports]}
    return CommandResult("\n".join(lines), data, EXIT_OK if ok else EXIT_MATH)


def _run(args, env) -> CommandResult:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    return run_program(parse_dsl(text))


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the output to FILE instead of stdout")

    p = _Parser(prog="fredkit", parents=[common],
                description="Exact Fredholm and Browder invariants of shift-type operators.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("classify", _classify, "Fredholm and Browder classes")
    sp.add_argument("expr")
    sp = add("invariants", _invariants, "signature and kernel/cokernel growth")
    sp.add_argument("expr")
    sp.add_argument("--powers", type=int, default=4, metavar="K")
    sp = add("normal-form", _normal_form, "normal form of a semi-Fredholm operator")
    sp.add_argument("expr")
    sp.add_argument("--four", action="store_true", help="split off the invertible part too")
    sp = add("spectrum", _spectrum, "spectrum of the given kind as an exact region")
    sp.add_argument("expr")
    sp.add_argument("--kind", choices=sorted(SPECTRUM_KINDS), default="sigma")
    sp = add("meet-spectrum", _meet_spectrum, "intersection over C of the spectra of M_C")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--kind", choices=COMPLETION_KINDS, default="sigma")
    sp.add_argument("--form", choices=("mul", "dims"), default="mul")
    sp = add("complete", _complete, "is there a C putting M_C in a class? with witness")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--kind", choices=sorted(COMPLETION_TARGETS) + ["sigma"], default="b")
    sp = add("verify", _verify, "run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    sp.add_argument("--cases", type=int, default=None,
                    help="cases per suite (defaults: " +
                    ", ".join(f"{k}={v}" for k, v in DEFAULT_CASES.items()) + ")")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("run", _run, "run a DSL program file ('-' for stdin)")
    sp.add_argument("file")
    return p


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, (UsageError, *_INPUT_ERRORS)):
        return EXIT_USAGE
    if isinstance(exc, FredkitError):
        return EXIT_MATH
    if isinstance(exc, (ValueError, OSError)):
        return EXIT_USAGE
    raise exc


def run_command(words: list, bindings: dict | None = None) -> CommandResult:
    """Run one command given as an argument list; errors become results."""
    try:
        args = _build_parser().parse_args(words)
        if args.command == "run" and bindings is not None:
            raise UsageError("run cannot be nested inside a program")
        return args.fn(args, bindings or {})
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        code = _error_code(exc)
        return CommandResult(f"error: {exc}", {"error": type(exc).__name__, "message": str(exc)},
                             code)


def run_program(prog: DslProgram) -> CommandResult:
    """Run every command of a program; the exit code is the worst one seen."""
    if not prog.commands:
        return CommandResult("error: program has no command", {"error": "UsageError"}, EXIT_USAGE)
    results = [run_command(words, prog.bindings) for words in prog.commands]
    text = "\n".join(r.text for r in results)
    data = {"results": [dict(command=w, **r.data) for w, r in zip(prog.commands, results)]}
    return CommandResult(text, data, max(r.code for r in results))


def main(argv: list | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _build_parser().parse_args(argv)
        as_json, out = getattr(args, "json", False), getattr(args, "out", None)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    result = run_command(argv)
    if as_json:
        body = json.dumps(result.data, ensure_ascii=False, indent=2)
    else:
        body = result.text
    if result.code and not as_json:
        stream = sys.stderr if result.text.startswith("error:") else sys.stdout
    else:
        stream = sys.stdout
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        print(body, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
