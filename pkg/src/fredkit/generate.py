"""Seeded random expressions for the property suites.

Expressions have depth at most 4 and lean towards shifts and Jordan blocks.
An amplification never sits inside another one: a double amplification has
the same census as a single one, so it would only waste cases.
"""

from __future__ import annotations

import itertools
import random

from .arith import GaussianRational
from .expr import (
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
from .graph import BasisGraph, lower_to_graph

__all__ = [
    "random_atom",
    "random_expr",
    "random_pair",
    "random_witness",
    "random_triple",
    "chain_ends",
    "chain_starts",
]

WEIGHTS = ["1", "1", "1", "2", "1/2", "-1", "i", "3/5+4/5i", "1+i"]
DIAG_VALUES = ["0", "0", "1", "2", "-1/2", "i", "3/5+4/5i"]


def _weight(rng: random.Random) -> GaussianRational:
    return GaussianRational.parse(rng.choice(WEIGHTS))


def _nilpotent_trimat(rng: random.Random) -> TriMatrix:
    n = rng.randint(2, 4)
    zero = GaussianRational(0)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.6:
                rows[i][j] = GaussianRational(rng.randint(-2, 2))
    return TriMatrix(tuple(tuple(r) for r in rows))


def random_atom(rng: random.Random) -> Expr:
    kind = rng.choices(
        ["shift", "bshift", "jordan", "bilateral", "diag", "trimat"], [4, 4, 4, 1, 1, 1]
    )[0]
    if kind == "shift":
        return Shift(_weight(rng))
    if kind == "bshift":
        return BackShift(_weight(rng))
    if kind == "bilateral":
        return Bilateral(_weight(rng))
    if kind == "jordan":
        return Jordan(rng.randint(1, 5))
    if kind == "diag":
        values = rng.sample(DIAG_VALUES[1:], rng.randint(1, 2))
        if rng.random() < 0.5:
            values = ["0"] + values[:1]
        entries = {}
        for v in values:
            entries[GaussianRational.parse(v)] = rng.choice([1, 2, 3, "inf"])
        return Diag(entries)
    if rng.random() < 0.7:
        return _nilpotent_trimat(rng)
    n = rng.randint(1, 3)
    zero = GaussianRational(0)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational.parse(rng.choice(DIAG_VALUES))
    return TriMatrix(tuple(tuple(r) for r in rows))


def random_expr(
    rng: random.Random, depth: int = 4, amplified: bool = False, allow_blocks: bool = True
) -> Expr:
    """A random graph-expressible expression."""
    if depth <= 1 or rng.random() < 0.3:
        return random_atom(rng)
    ops = ["sum", "power", "adjoint", "amplify", "block"]
    weights = [3, 1, 1, 0 if amplified else 1, 1 if allow_blocks else 0]
    op = rng.choices(ops, weights)[0]
    if op == "sum":
        parts = tuple(
            random_expr(rng, depth - 1, amplified, allow_blocks) for _ in range(rng.randint(2, 3))
        )
        return DirectSum(parts)
    if op == "power":
        return Power(random_expr(rng, depth - 1, amplified, allow_blocks), rng.randint(2, 3))
    if op == "adjoint":
        return Adjoint(random_expr(rng, depth - 1, amplified, allow_blocks))
    if op == "amplify":
        return Amplify(random_expr(rng, depth - 1, True, allow_blocks))
    a = random_expr(rng, depth - 1, amplified, False)
    b = random_expr(rng, depth - 1, amplified, False)
    return TriBlock(a, random_witness(rng, a, b), b)


def _labels(g: BasisGraph, want, per_family: int = 3) -> list:
    out = []
    for fam in g.families:
        if not fam.addressable:
            continue
        for copy in itertools.islice(fam.copies(), per_family):
            pos = want(fam)
            if pos is not None:
                out.append(fam.vertex(copy, pos))
    return out


def chain_ends(g: BasisGraph, per_family: int = 3) -> list:
    """Labels of last vertices (kernel vectors) of backward rays and finite chains."""
    def end(f):
        if f.kind == "backward":
            return 1
        return f.length if f.kind == "finite" else None

    return _labels(g, end, per_family)


def chain_starts(g: BasisGraph, per_family: int = 3) -> list:
    """Labels of first vertices of forward rays and finite chains."""
    return _labels(g, lambda f: 1 if f.kind in ("forward", "finite") else None, per_family)


def random_witness(rng: random.Random, a: Expr, b: Expr) -> WitnessMap:
    """A basis-aligned corner from chain ends of B to chain starts of A."""
    ends = chain_ends(lower_to_graph(b))
    starts = chain_starts(lower_to_graph(a))
    rng.shuffle(ends)
    rng.shuffle(starts)
    n = rng.randint(0, min(len(ends), len(starts)))
    return WitnessMap(tuple((ends[i], starts[i], _weight(rng)) for i in range(n)))


def _forwardish(rng: random.Random) -> Expr:
    pool = [
        lambda: Shift(_weight(rng)),
        lambda: Amplify(Shift()),
        lambda: Jordan(rng.randint(1, 4)),
        lambda: Power(Shift(), rng.randint(2, 3)),
        lambda: Bilateral(),
    ]
    parts = [rng.choices(pool, [4, 1, 3, 2, 1])[0]() for _ in range(rng.randint(1, 3))]
    return parts[0] if len(parts) == 1 else DirectSum(tuple(parts))


def random_pair(rng: random.Random) -> tuple[Expr, Expr]:
    """(A, B); half of the time A leans upper and B lower semi-Browder."""
    if rng.random() < 0.5:
        return random_expr(rng, 3), random_expr(rng, 3)
    a = _forwardish(rng)
    b = _forwardish(rng)
    return a, Adjoint(b) if rng.random() < 0.8 else b


def random_triple(rng: random.Random) -> tuple[Expr, WitnessMap, Expr]:
    if rng.random() < 0.5:
        a, b = random_pair(rng)
    else:
        a, b = random_expr(rng, 3, allow_blocks=False), random_expr(rng, 3, allow_blocks=False)
    return a, random_witness(rng, a, b), b
