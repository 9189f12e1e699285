"""Recursive-descent parser for the operator-expression DSL.

Grammar (``^`` binds tighter than ``inf``/``adj``, which bind tighter than ``(+)``)::

    sum      := postfix ("(+)" postfix)*
    postfix  := primary ("^" INT)*
    primary  := "(" sum ")" | "inf(" sum ")" | "adj(" sum ")"
              | "tri(" sum "," witness "," sum ")" | atom | NAME
    atom     := ("shift" | "bshift" | "bilateral") ["(" scalar ["," scalar] ")"]
              | "jordan(" INT ")" | "diag{" scalar ":" extnat ("," ...)* "}"
              | "trimat[" "[" scalar,* "]" ("," "[" scalar,* "]")* "]"
    witness  := "{" [label "->" label [":" scalar] ("," ...)*] "}" | RULE
    label    := INT ("." INT)*

A program is a sequence of lines: ``let NAME = expr`` bindings, ``#`` comments
and command lines such as ``classify A`` or ``complete --kind b A "bshift"``.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field

from .arith import ExtNat, GaussianRational
from .errors import DslSyntaxError, NotGraphExpressible
from .expr import (
    WITNESS_RULES,
    Adjoint,
    Amplify,
    BackShift,
    Bilateral,
    Diag,
    DirectSum,
    Expr,
    Jordan,
    Power,
    Shift,
    TriBlock,
    TriMatrix,
    WitnessMap,
)

__all__ = ["parse_expr", "parse_dsl", "DslProgram", "KEYWORDS"]

KEYWORDS = frozenset(
    {"shift", "bshift", "bilateral", "jordan", "diag", "trimat", "inf", "adj", "tri", "let"}
)
_SHIFTS = {"shift": Shift, "bshift": BackShift, "bilateral": Bilateral}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?[0-9]+")
_RULE = re.compile(r"pair-[a-z]+")


class _Parser:
    def __init__(self, text: str, bindings: dict | None):
        self.text = text
        self.pos = 0
        self.bindings = bindings or {}

    # -- lexing helpers

    def error(self, message: str, pos: int | None = None):
        return DslSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.accept(s):
            found = self.text[self.pos : self.pos + 8] or "end of input"
            raise self.error(f"expected {s!r}, found {found!r}")

    def regex(self, pattern: re.Pattern, what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        return int(self.regex(_INT, "an integer"))

    def raw_until(self, stops: str, what: str) -> tuple[str, int]:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        raw = self.text[start : self.pos].strip()
        if not raw:
            raise self.error(f"expected {what}", start)
        return raw, start

    def scalar(self, stops: str) -> GaussianRational:
        raw, start = self.raw_until(stops, "a scalar")
        try:
            return GaussianRational.parse(raw)
        except ValueError:
            raise self.error(f"bad scalar {raw!r}", start) from None

    def extnat(self, stops: str) -> ExtNat:
        raw, start = self.raw_until(stops, "a multiplicity")
        try:
            return ExtNat(raw)
        except ValueError:
            raise self.error(f"bad multiplicity {raw!r}", start) from None

    # -- grammar

    def parse(self) -> Expr:
        e = self.sum()
        self.skip()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return e

    def sum(self) -> Expr:
        parts = [self.postfix()]
        while self.accept("(+)"):
            parts.append(self.postfix())
        return parts[0] if len(parts) == 1 else DirectSum(tuple(parts))

    def postfix(self) -> Expr:
        e = self.primary()
        while self.accept("^"):
            start = self.pos
            k = self.integer()
            if k < 1:
                raise self.error("power exponent must be >= 1", start)
            e = Power(e, k)
        return e

    def primary(self) -> Expr:
        self.skip()
        start = self.pos
        if self.peek("(+)"):
            raise self.error("missing operand before '(+)'")
        if self.accept("("):
            e = self.sum()
            self.expect(")")
            return e
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise self.error("expected an expression")
        word = m.group()
        self.pos = m.end()
        if word in ("inf", "adj"):
            self.expect("(")
            inner = self.sum()
            self.expect(")")
            return Amplify(inner) if word == "inf" else Adjoint(inner)
        if word == "tri":
            return self.block()
        if word in _SHIFTS:
            args = []
            if not self.peek("(+)") and self.accept("("):
                args.append(self.scalar(",)"))
                if self.accept(","):
                    args.append(self.scalar(")"))
                self.expect(")")
            return _SHIFTS[word](*args)
        if word == "jordan":
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return Jordan(n)
        if word == "diag":
            return self.diag()
        if word == "trimat":
            return self.trimat()
        if word in self.bindings:
            return self.bindings[word]
        raise self.error(f"unbound name {word!r}", start)

    def diag(self) -> Diag:
        self.expect("{")
        entries = []
        if not self.accept("}"):
            while True:
                v = self.scalar(":,}")
                self.expect(":")
                entries.append((v, self.extnat(",}")))
                if self.accept("}"):
                    break
                self.expect(",")
        if not entries:
            raise self.error("diag needs at least one entry")
        return Diag(tuple(entries))

    def trimat(self) -> TriMatrix:
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.scalar(",]")]
            while self.accept(","):
                row.append(self.scalar(",]"))
            self.expect("]")
            rows.append(tuple(row))
            if self.accept("]"):
                break
            self.expect(",")
        return TriMatrix(tuple(rows))

    def label(self) -> tuple:
        parts = [self.integer()]
        while self.text.startswith(".", self.pos):
            self.pos += 1
            parts.append(self.integer())
        return tuple(parts)

    def witness(self) -> WitnessMap:
        self.skip()
        if self.peek("pair-"):
            start = self.pos
            rule = self.regex(_RULE, "a pairing rule")
            if rule not in WITNESS_RULES:
                raise self.error(f"unknown pairing rule {rule!r}", start)
            return WitnessMap(rule=rule)
        self.expect("{")
        pairs = []
        if not self.accept("}"):
            while True:
                src = self.label()
                self.expect("->")
                tgt = self.label()
                w = self.scalar(",}") if self.accept(":") else GaussianRational(1)
                pairs.append((src, tgt, w))
                if self.accept("}"):
                    break
                self.expect(",")
        return WitnessMap(tuple(pairs))

    def block(self) -> TriBlock:
        from .graph import lower_to_graph

        self.expect("(")
        a = self.sum()
        self.expect(",")
        c = self.witness()
        self.expect(",")
        b = self.sum()
        self.expect(")")
        block = TriBlock(a, c, b)
        try:
            lower_to_graph(block)  # checks that C addresses real basis vectors
        except NotGraphExpressible:
            pass
        return block


def parse_expr(text: str, bindings: dict | None = None) -> Expr:
    """Parse one expression; ``bindings`` maps names to already-built expressions."""
    return _Parser(text, bindings).parse()


@dataclass
class DslProgram:
    bindings: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    @property
    def command(self) -> list | None:
        return self.commands[-1] if self.commands else None


_LET = re.compile(r"let\s+([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)$")


def parse_dsl(text: str) -> DslProgram:
    """Parse a program: ``let`` bindings, comments and command lines."""
    prog = DslProgram()
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("let ") or stripped == "let":
            m = _LET.match(stripped)
            if not m:
                raise DslSyntaxError(f"line {lineno}: expected 'let NAME = expr'")
            name, body = m.group(1), m.group(2)
            if name in KEYWORDS:
                raise DslSyntaxError(f"line {lineno}: {name!r} is a reserved word")
            try:
                prog.bindings[name] = parse_expr(body, prog.bindings)
            except DslSyntaxError as exc:
                raise DslSyntaxError(f"line {lineno}: {exc}") from None
            continue
        try:
            words = shlex.split(stripped, comments=True)
        except ValueError as exc:
            raise DslSyntaxError(f"line {lineno}: {exc}") from None
        prog.commands.append(words)
    return prog
