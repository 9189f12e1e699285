"""Operator expressions over shift-type atoms.

Basis vectors are addressed by integer tuples ("labels"):

* ``Shift``/``BackShift``: ``(i,)`` for ``e_i``, ``i >= 1``; ``Bilateral``: ``(i,)`` with ``i`` in Z.
* ``Jordan(n)``: ``(i,)``, ``1 <= i <= n`` with ``J e_1 = 0`` and ``J e_i = e_{i-1}``.
* ``Diag``: ``(slot, copy)``, slot 1-based in entry order, copy in ``1..multiplicity``.
* ``TriMatrix``: ``(i,)``, ``1 <= i <= n``.
* ``DirectSum``: ``(part, *inner)``; ``Amplify``: ``(copy, *inner)``, both 1-based.
* ``Power``/``Adjoint``: the labels of the inner expression.
* ``TriBlock``: ``(1, *h)`` for the first space H, ``(2, *k)`` for K.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import GaussianRational, ext, gq
from .errors import ArityDomain, InvalidWitness

__all__ = [
    "Expr",
    "Shift",
    "BackShift",
    "Bilateral",
    "Jordan",
    "Diag",
    "TriMatrix",
    "DirectSum",
    "Amplify",
    "Power",
    "Adjoint",
    "TriBlock",
    "WitnessMap",
    "adjoint",
    "direct_sum",
    "assemble_block",
    "pretty",
    "pretty_witness",
    "WITNESS_RULES",
]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)

# rule name -> (B chain kinds whose ends are used, A chain kinds whose starts are used)
WITNESS_RULES = {
    "pair-rays": (("backward",), ("forward",)),
    "pair-kernel": (("backward", "finite"), ("forward",)),
    "pair-cokernel": (("backward",), ("forward", "finite")),
}


class Expr:
    """Base class of all expression nodes."""

    def __add__(self, other: "Expr") -> "DirectSum":
        return DirectSum((self, other))

    def __pow__(self, k: int) -> "Power":
        return Power(self, k)

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True)
class _ShiftAtom(Expr):
    c: GaussianRational = ONE
    mu: GaussianRational = ZERO

    def __post_init__(self):
        object.__setattr__(self, "c", gq(self.c))
        object.__setattr__(self, "mu", gq(self.mu))
        if self.c.is_zero():
            raise ArityDomain(f"{type(self).__name__} weight must be nonzero")


@dataclass(frozen=True, repr=False)
class Shift(_ShiftAtom):
    """``mu I + c U`` with U the unilateral shift."""

    def __repr__(self):
        return f"Shift({self.c}, {self.mu})"


@dataclass(frozen=True, repr=False)
class BackShift(_ShiftAtom):
    """``mu I + c U*``."""

    def __repr__(self):
        return f"BackShift({self.c}, {self.mu})"


@dataclass(frozen=True, repr=False)
class Bilateral(_ShiftAtom):
    """``mu I + c W`` with W the bilateral shift on l2(Z)."""

    def __repr__(self):
        return f"Bilateral({self.c}, {self.mu})"


@dataclass(frozen=True)
class Jordan(Expr):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ArityDomain(f"jordan block size must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Diag(Expr):
    """Diagonal operator; ``entries`` is a tuple of (value, multiplicity)."""

    entries: tuple

    def __post_init__(self):
        if isinstance(self.entries, dict):
            items = self.entries.items()
        else:
            items = self.entries
        cleaned = []
        seen = set()
        for v, m in items:
            v, m = gq(v), ext(m)
            if v in seen:
                raise ArityDomain(f"diag value {v} listed twice")
            seen.add(v)
            if m == 0:
                raise ArityDomain("diag multiplicity must be positive")
            cleaned.append((v, m))
        if not cleaned:
            raise ArityDomain("diag needs at least one entry")
        object.__setattr__(self, "entries", tuple(cleaned))


@dataclass(frozen=True)
class TriMatrix(Expr):
    """Upper-triangular square matrix, rows as tuples of scalars."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(gq(x) for x in r) for r in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ArityDomain("trimat must be a nonempty square matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j]:
                    raise ArityDomain("trimat must be upper triangular")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n))


@dataclass(frozen=True)
class DirectSum(Expr):
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) < 2:
            raise ArityDomain("direct sum needs at least two summands")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class Amplify(Expr):
    """Countable direct sum of copies of ``inner``."""

    inner: Expr


@dataclass(frozen=True)
class Power(Expr):
    inner: Expr
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ArityDomain(f"power exponent must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Adjoint(Expr):
    inner: Expr


@dataclass(frozen=True)
class WitnessMap:
    """Basis-aligned corner operator C: K -> H.

    Either an explicit list of ``(source label in K, target label in H, weight)``
    triples, or a named pairing ``rule`` (see ``WITNESS_RULES``) resolved when
    the block is lowered.
    """

    pairs: tuple = ()
    rule: str | None = None

    def __post_init__(self):
        pairs = tuple((tuple(s), tuple(t), gq(w)) for s, t, w in self.pairs)
        if self.rule is not None:
            if self.rule not in WITNESS_RULES:
                raise InvalidWitness(f"unknown pairing rule {self.rule!r}")
            if pairs:
                raise InvalidWitness("a witness is either a rule or explicit pairs")
        srcs = [p[0] for p in pairs]
        tgts = [p[1] for p in pairs]
        if len(set(srcs)) != len(srcs):
            raise InvalidWitness("witness source indices must be distinct")
        if len(set(tgts)) != len(tgts):
            raise InvalidWitness("witness target indices must be distinct")
        if any(w.is_zero() for _, _, w in pairs):
            raise InvalidWitness("witness weights must be nonzero")
        object.__setattr__(self, "pairs", pairs)

    @property
    def is_zero(self) -> bool:
        return self.rule is None and not self.pairs

    @property
    def is_finite(self) -> bool:
        return self.rule is None

    def weights(self) -> frozenset:
        return frozenset(w for _, _, w in self.pairs) | ({ONE} if self.rule else frozenset())

    def to_json(self):
        if self.rule is not None:
            return {"rule": self.rule}
        return {
            "pairs": [
                {"source": list(s), "target": list(t), "weight": w.to_json()}
                for s, t, w in self.pairs
            ]
        }


@dataclass(frozen=True)
class TriBlock(Expr):
    """The block operator ``M_C = (A C; 0 B)`` on ``H (+) K``."""

    a: Expr
    c: WitnessMap = field(default_factory=WitnessMap)
    b: Expr = None

    def __post_init__(self):
        if self.b is None:
            raise ArityDomain("TriBlock needs both diagonal entries")


def direct_sum(parts) -> Expr:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else DirectSum(parts)


def adjoint(e: Expr) -> Expr:
    """Unitarily-equivalent normal form of the adjoint of ``e``."""
    if isinstance(e, Shift):
        return BackShift(e.c.conj(), e.mu.conj())
    if isinstance(e, BackShift):
        return Shift(e.c.conj(), e.mu.conj())
    if isinstance(e, Bilateral):
        # W* is unitarily equivalent to W via e_i -> e_{-i}
        return Bilateral(e.c.conj(), e.mu.conj())
    if isinstance(e, Jordan):
        return e
    if isinstance(e, Diag):
        return Diag(tuple((v.conj(), m) for v, m in e.entries))
    if isinstance(e, TriMatrix):
        # conjugate transpose is lower triangular; reversing the basis makes it upper again
        n = e.n
        return TriMatrix(
            tuple(tuple(e.rows[n - 1 - j][n - 1 - i].conj() for j in range(n)) for i in range(n))
        )
    if isinstance(e, DirectSum):
        return DirectSum(tuple(adjoint(p) for p in e.parts))
    if isinstance(e, Amplify):
        return Amplify(adjoint(e.inner))
    if isinstance(e, Power):
        return Power(adjoint(e.inner), e.k)
    if isinstance(e, Adjoint):
        return e.inner
    if isinstance(e, TriBlock):
        raise ArityDomain("the adjoint of an upper-triangular block is not upper triangular")
    raise TypeError(f"not an expression: {e!r}")


def assemble_block(a: Expr, c: WitnessMap, b: Expr) -> TriBlock:
    """Build ``M_C`` and check that C addresses chain ends of B and chain starts of A."""
    from .graph import lower_to_graph  # circular at import time

    block = TriBlock(a, c, b)
    lower_to_graph(block)
    return block


def _scalar(z: GaussianRational) -> str:
    return str(z)


def _label(lab) -> str:
    return ".".join(str(i) for i in lab)


def pretty(e: Expr) -> str:
    """Render ``e`` in the DSL; ``parse_expr(pretty(e)) == e``."""
    if isinstance(e, (Shift, BackShift, Bilateral)):
        name = {Shift: "shift", BackShift: "bshift", Bilateral: "bilateral"}[type(e)]
        if e.mu:
            return f"{name}({_scalar(e.c)}, {_scalar(e.mu)})"
        if e.c != ONE:
            return f"{name}({_scalar(e.c)})"
        return name
    if isinstance(e, Jordan):
        return f"jordan({e.n})"
    if isinstance(e, Diag):
        return "diag{" + ", ".join(f"{_scalar(v)}: {m}" for v, m in e.entries) + "}"
    if isinstance(e, TriMatrix):
        rows = ", ".join("[" + ", ".join(_scalar(x) for x in r) + "]" for r in e.rows)
        return f"trimat[{rows}]"
    if isinstance(e, DirectSum):
        return " (+) ".join(_wrap_sum(p) for p in e.parts)
    if isinstance(e, Amplify):
        return f"inf({pretty(e.inner)})"
    if isinstance(e, Adjoint):
        return f"adj({pretty(e.inner)})"
    if isinstance(e, Power):
        inner = pretty(e.inner)
        if isinstance(e.inner, DirectSum):
            inner = f"({inner})"
        return f"{inner}^{e.k}"
    if isinstance(e, TriBlock):
        return f"tri({pretty(e.a)}, {pretty_witness(e.c)}, {pretty(e.b)})"
    raise TypeError(f"not an expression: {e!r}")


def _wrap_sum(p: Expr) -> str:
    s = pretty(p)
    return f"({s})" if isinstance(p, DirectSum) else s


def pretty_witness(c: WitnessMap) -> str:
    if c.rule is not None:
        return c.rule
    items = []
    for s, t, w in c.pairs:
        item = f"{_label(s)} -> {_label(t)}"
        if w != ONE:
            item += f": {_scalar(w)}"
        items.append(item)
    return "{" + ", ".join(items) + "}"


def amplified_shift_pair() -> DirectSum:
    """Countably many backward shifts next to countably many shifts."""
    return DirectSum((Amplify(BackShift()), Amplify(Shift())))

