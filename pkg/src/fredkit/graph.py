"""Basis-graph lowering and chain census.

A graph-expressible operator sends every basis vector to a nonzero multiple of
at most one other basis vector, and no two vectors to the same one. Its graph
is a disjoint union of chains: finite paths, forward rays (a start, no end),
backward rays (an end, no start), bi-infinite lines, and fixed points carrying
a nonzero diagonal weight ("loops", the invertible finite-rank part).

Chains are grouped in ``Family`` objects: ``count`` copies of one chain shape,
with a vertex function ``(copy, position) -> label``. Positions run

* forward ray: 1, 2, ... from the start;
* backward ray: 1, 2, ... from the end, against the arrows;
* finite chain of length n: 1..n from start to end;
* bi-infinite: all integers, along the arrows;
* loop: 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .arith import INF, ExtNat, GaussianRational, dense_rank, ext, matmul
from .errors import IndexOutOfSpace, NotGraphExpressible
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
)

__all__ = [
    "Family",
    "BasisGraph",
    "ChainCensus",
    "lower_to_graph",
    "chain_census",
    "jordan_sizes",
    "explicit_pairing",
]

KINDS = ("finite", "forward", "backward", "bi", "loop")
_keys = itertools.count(1)
ONE = GaussianRational(1)


# -- census ------------------------------------------------------------------


@dataclass(frozen=True)
class ChainCensus:
    """Counts of chain types; ``finite`` is a sorted tuple of (length, count)."""

    finite: tuple = ()
    forward: ExtNat = ExtNat(0)
    backward: ExtNat = ExtNat(0)
    bi: ExtNat = ExtNat(0)
    loops: ExtNat = ExtNat(0)

    def __post_init__(self):
        merged: dict[int, ExtNat] = {}
        for n, c in self.finite:
            if n < 1:
                raise ValueError("finite chains have positive length")
            merged[n] = merged.get(n, ExtNat(0)) + ext(c)
        object.__setattr__(
            self, "finite", tuple(sorted((n, c) for n, c in merged.items() if c))
        )
        for name in ("forward", "backward", "bi", "loops"):
            object.__setattr__(self, name, ext(getattr(self, name)))

    @classmethod
    def from_chains(cls, chains) -> "ChainCensus":
        """Build from ``(kind, length, count)`` triples."""
        finite = []
        totals = {k: ExtNat(0) for k in KINDS}
        for kind, length, count in chains:
            if kind == "finite":
                finite.append((length, count))
            else:
                totals[kind] = totals[kind] + ext(count)
        return cls(
            tuple(finite), totals["forward"], totals["backward"], totals["bi"], totals["loop"]
        )

    def __add__(self, other: "ChainCensus") -> "ChainCensus":
        return ChainCensus(
            self.finite + other.finite,
            self.forward + other.forward,
            self.backward + other.backward,
            self.bi + other.bi,
            self.loops + other.loops,
        )

    def amplify(self) -> "ChainCensus":
        return ChainCensus(
            tuple((n, c * INF) for n, c in self.finite),
            self.forward * INF,
            self.backward * INF,
            self.bi * INF,
            self.loops * INF,
        )

    def adjoint(self) -> "ChainCensus":
        return ChainCensus(self.finite, self.backward, self.forward, self.bi, self.loops)

    def finite_count(self) -> ExtNat:
        return sum((c for _, c in self.finite), ExtNat(0))

    def finite_dim(self) -> ExtNat:
        return sum((c * n for n, c in self.finite), ExtNat(0))

    def max_length(self) -> int:
        return max((n for n, _ in self.finite), default=0)

    def only(self, *names) -> "ChainCensus":
        """The slice keeping only the named parts (``finite``, ``forward``, ...)."""
        return ChainCensus(
            self.finite if "finite" in names else (),
            self.forward if "forward" in names else 0,
            self.backward if "backward" in names else 0,
            self.bi if "bi" in names else 0,
            self.loops if "loops" in names else 0,
        )

    def to_json(self):
        return {
            "finite_chains": {str(n): c.to_json() for n, c in self.finite},
            "forward_rays": self.forward.to_json(),
            "backward_rays": self.backward.to_json(),
            "bi_infinite": self.bi.to_json(),
            "loops": self.loops.to_json(),
        }

    def __str__(self) -> str:
        parts = [f"chain[{n}]×{c}" for n, c in self.finite]
        for name in ("forward", "backward", "bi", "loops"):
            v = getattr(self, name)
            if v:
                parts.append(f"{name}×{v}")
        return "{" + ", ".join(parts) + "}"


# -- families ------------------------------------------------------------------


def _copies_upto(count: ExtNat) -> Callable[[], Iterator]:
    if count.is_inf:
        return lambda: itertools.count(1)
    return lambda: iter(range(1, int(count) + 1))


def _has_upto(count: ExtNat) -> Callable[[object], bool]:
    if count.is_inf:
        return lambda c: isinstance(c, int) and c >= 1
    m = int(count)
    return lambda c: isinstance(c, int) and 1 <= c <= m


class Family:
    """``count`` copies of one chain shape."""

    __slots__ = ("key", "kind", "length", "count", "_copies", "_has", "_vertex", "addressable")

    def __init__(self, kind, length, count, copies, has, vertex, addressable=True, key=None):
        if kind not in KINDS:
            raise ValueError(kind)
        self.key = next(_keys) if key is None else key
        self.kind = kind
        self.length = length if kind == "finite" else (1 if kind == "loop" else 0)
        self.count = ext(count)
        self._copies = copies
        self._has = has
        self._vertex = vertex
        self.addressable = addressable and vertex is not None

    def copies(self) -> Iterator:
        return self._copies()

    def has_copy(self, c) -> bool:
        return self._has(c)

    def vertex(self, copy, pos):
        if self._vertex is None:
            raise NotGraphExpressible("vertices of this chain family are not addressable")
        return self._vertex(copy, pos)

    def valid_pos(self, pos: int) -> bool:
        if self.kind == "bi":
            return True
        if self.kind in ("forward", "backward"):
            return pos >= 1
        return 1 <= pos <= self.length

    def is_end(self, pos) -> bool:
        return (self.kind == "backward" and pos == 1) or (
            self.kind == "finite" and pos == self.length
        )

    def is_start(self, pos) -> bool:
        return self.kind in ("forward", "finite") and pos == 1

    def next_pos(self, pos):
        """Position of the image vertex, or None when the vertex maps to 0."""
        if self.kind in ("forward", "bi"):
            return pos + 1
        if self.kind == "backward":
            return pos - 1 if pos > 1 else None
        if self.kind == "finite":
            return pos + 1 if pos < self.length else None
        return pos

    def derive(self, **kw) -> "Family":
        """A new family (fresh key) sharing everything not overridden."""
        args = dict(
            kind=self.kind,
            length=self.length,
            count=self.count,
            copies=self._copies,
            has=self._has,
            vertex=self._vertex,
            addressable=self.addressable,
        )
        args.update(kw)
        return Family(**args)

    def without(self, removed) -> "Family":
        """Same family (same key) with the copies in ``removed`` taken out."""
        removed = frozenset(removed)
        if not removed:
            return self
        count = self.count if self.count.is_inf else self.count - len(removed)
        copies, has = self._copies, self._has
        return Family(
            self.kind,
            self.length,
            count,
            lambda: (c for c in copies() if c not in removed),
            lambda c: c not in removed and has(c),
            self._vertex,
            self.addressable,
            key=self.key,
        )

    def __repr__(self):
        n = f"[{self.length}]" if self.kind == "finite" else ""
        return f"Family({self.kind}{n}×{self.count})"


class BasisGraph:
    """Symbolic basis graph: chain families plus a label locator."""

    def __init__(self, families, locate, weights):
        self.families = tuple(f for f in families if f.count)
        self._by_key = {f.key: f for f in self.families}
        self._locate = locate
        self.weights = frozenset(weights)

    def locate(self, label):
        """``(family, copy, position)`` of a basis label, or None."""
        try:
            hit = self._locate(tuple(label))
        except (TypeError, IndexError, KeyError, ValueError):
            return None
        if hit is None:
            return None
        key, copy, pos = hit
        fam = self._by_key.get(key)
        if fam is None or not fam.has_copy(copy) or not fam.valid_pos(pos):
            return None
        return fam, copy, pos

    def succ(self, label):
        """Label of the image basis vector, ``label`` itself for loops, or None."""
        hit = self.locate(label)
        if hit is None:
            raise IndexOutOfSpace(f"no basis vector {label}")
        fam, copy, pos = hit
        nxt = fam.next_pos(pos)
        return None if nxt is None else fam.vertex(copy, nxt)

    def census(self) -> ChainCensus:
        return ChainCensus.from_chains((f.kind, f.length, f.count) for f in self.families)

    def range_closed(self) -> bool:
        # finitely many nonzero weights bound every chain below
        return all(not w.is_zero() for w in self.weights)

    def __repr__(self):
        return f"BasisGraph({list(self.families)})"


def chain_census(g: BasisGraph) -> ChainCensus:
    return g.census()


# -- lowering ----------------------------------------------------------------------


def _single(kind, length, vertex, addressable=True) -> Family:
    return Family(kind, length, 1, lambda: iter((1,)), lambda c: c == 1, vertex, addressable)


def _int_label(lab) -> int:
    if len(lab) != 1 or not isinstance(lab[0], int):
        raise KeyError(lab)
    return lab[0]


def jordan_sizes(rows) -> list[int]:
    """Jordan block sizes (descending) of a nilpotent matrix, from rank chains."""
    n = len(rows)
    ranks = [n]
    power = [list(r) for r in rows]
    while ranks[-1] > 0:
        ranks.append(dense_rank(power))
        if ranks[-1] == ranks[-2]:
            raise NotGraphExpressible("matrix is not nilpotent")
        power = matmul(power, rows)
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return sizes


def _lower_atom(e: Expr) -> BasisGraph:
    if isinstance(e, (Shift, BackShift, Bilateral)):
        if e.mu:
            raise NotGraphExpressible(f"{e!r}: translated shifts are not weighted basis shifts")
        kind = {Shift: "forward", BackShift: "backward", Bilateral: "bi"}[type(e)]
        fam = _single(kind, 0, lambda c, p: (p,))

        def locate(lab):
            return (fam.key, 1, _int_label(lab))

        return BasisGraph([fam], locate, {e.c})

    if isinstance(e, Jordan):
        m = e.n
        fam = _single("finite", m, lambda c, p: (m - p + 1,))

        def locate(lab):
            i = _int_label(lab)
            return (fam.key, 1, m - i + 1) if 1 <= i <= m else None

        return BasisGraph([fam], locate, {ONE} if m > 1 else ())

    if isinstance(e, Diag):
        fams = []
        for slot, (v, mult) in enumerate(e.entries, 1):
            kind = "loop" if v else "finite"
            fams.append(
                Family(kind, 1, mult, _copies_upto(mult), _has_upto(mult),
                       (lambda s: lambda c, p: (s, c))(slot))
            )

        def locate(lab):
            s, c = lab
            if not 1 <= s <= len(fams):
                return None
            return (fams[s - 1].key, c, 1)

        return BasisGraph(fams, locate, {v for v, _ in e.entries if v})

    if isinstance(e, TriMatrix):
        n = e.n
        if e.is_diagonal():
            fams = [
                _single("loop" if e.rows[i][i] else "finite", 1, (lambda i: lambda c, p: (i + 1,))(i))
                for i in range(n)
            ]

            def locate(lab):
                i = _int_label(lab)
                return (fams[i - 1].key, 1, 1) if 1 <= i <= n else None

            return BasisGraph(fams, locate, {e.rows[i][i] for i in range(n) if e.rows[i][i]})
        if any(e.rows[i][i] for i in range(n)):
            raise NotGraphExpressible("only nilpotent or diagonal trimat blocks have a basis graph")
        # nilpotent: chains live on a Jordan basis; labels name its vectors, not e_i
        sizes = jordan_sizes(e.rows)
        fams, starts, s = [], [], 1
        for size in sizes:
            starts.append(s)
            fams.append(_single("finite", size, (lambda s0: lambda c, p: (s0 + p - 1,))(s), False))
            s += size

        def locate(lab):
            i = _int_label(lab)
            for fam, s0 in zip(fams, starts):
                if s0 <= i < s0 + fam.length:
                    return (fam.key, 1, i - s0 + 1)
            return None

        return BasisGraph(fams, locate, {ONE})

    raise TypeError(f"not an atom: {e!r}")


def _lower_sum(e: DirectSum) -> BasisGraph:
    subs = [lower_to_graph(p) for p in e.parts]
    fams, keymap = [], {}
    for i, g in enumerate(subs, 1):
        for f in g.families:
            v = f._vertex
            w = f.derive(vertex=None if v is None else (lambda v, i: lambda c, p: (i,) + v(c, p))(v, i))
            keymap[(i, f.key)] = w.key
            fams.append(w)

    def locate(lab):
        i = lab[0]
        if not 1 <= i <= len(subs):
            return None
        hit = subs[i - 1]._locate(lab[1:])
        if hit is None:
            return None
        key, c, p = hit
        return (keymap[(i, key)], c, p)

    return BasisGraph(fams, locate, frozenset().union(*(g.weights for g in subs)))


def _amplified_copies(inner: Family) -> Callable[[], Iterator]:
    if inner.count.is_finite:
        base = list(inner.copies())
        return lambda: ((j, c) for j in itertools.count(1) for c in base)

    def gen():
        cache, it = [], inner.copies()
        for s in itertools.count(0):
            while len(cache) <= s:
                cache.append(next(it))
            for j in range(s + 1):
                yield (j + 1, cache[s - j])

    return gen


def _lower_amplify(e: Amplify) -> BasisGraph:
    g = lower_to_graph(e.inner)
    fams, keymap = [], {}
    for f in g.families:
        v, has = f._vertex, f._has
        w = f.derive(
            count=f.count * INF,
            copies=_amplified_copies(f),
            has=(lambda has: lambda jc: isinstance(jc, tuple) and len(jc) == 2
                 and isinstance(jc[0], int) and jc[0] >= 1 and has(jc[1]))(has),
            vertex=None if v is None else (lambda v: lambda jc, p: (jc[0],) + v(jc[1], p))(v),
        )
        keymap[f.key] = w.key
        fams.append(w)

    def locate(lab):
        j = lab[0]
        if not isinstance(j, int) or j < 1:
            return None
        hit = g._locate(lab[1:])
        if hit is None:
            return None
        key, c, p = hit
        return (keymap[key], (j, c), p)

    return BasisGraph(fams, locate, g.weights)


def _power_weights(weights, k) -> set:
    return {
        math.prod(combo, start=ONE)
        for combo in itertools.combinations_with_replacement(sorted(weights, key=lambda z: z.sort_key()), k)
    }


def _lower_power(e: Power) -> BasisGraph:
    g, k = lower_to_graph(e.inner), e.k
    if k == 1:
        return g
    fams, keymap = [], {}
    for f in g.families:
        v = f._vertex
        if f.kind == "loop":
            w = f.derive()
            for r in range(k):
                keymap[(f.key, r)] = w.key
            fams.append(w)
            continue
        residues = range(k) if f.kind != "finite" else range(min(k, f.length))
        for r in residues:
            if f.kind == "bi":
                pos = (lambda r: lambda p: r + k * p)(r)
            else:
                pos = (lambda r: lambda p: r + 1 + k * (p - 1))(r)
            length = (f.length - r + k - 1) // k if f.kind == "finite" else 0
            w = f.derive(
                length=length,
                vertex=None if v is None else (lambda v, pos: lambda c, p: v(c, pos(p)))(v, pos),
            )
            keymap[(f.key, r)] = w.key
            fams.append(w)

    by_key = {f.key: f for f in g.families}

    def locate(lab):
        hit = g._locate(lab)
        if hit is None:
            return None
        key, c, q = hit
        f = by_key.get(key)
        if f is None:
            return None
        if f.kind == "loop":
            return (keymap[(key, 0)], c, q)
        if f.kind == "bi":
            r = q % k
            return (keymap[(key, r)], c, (q - r) // k)
        r = (q - 1) % k
        return (keymap[(key, r)], c, (q - 1) // k + 1)

    return BasisGraph(fams, locate, _power_weights(g.weights, k))


_MIRROR = {"forward": "backward", "backward": "forward", "finite": "finite", "bi": "bi", "loop": "loop"}


def _adjoint_pos(f: Family) -> Callable[[int], int]:
    if f.kind == "finite":
        n = f.length
        return lambda p: n - p + 1
    if f.kind == "bi":
        return lambda p: -p
    return lambda p: p


def _lower_adjoint(e: Adjoint) -> BasisGraph:
    g = lower_to_graph(e.inner)
    fams, keymap, posmaps = [], {}, {}
    for f in g.families:
        v, pm = f._vertex, _adjoint_pos(f)
        w = f.derive(
            kind=_MIRROR[f.kind],
            vertex=None if v is None else (lambda v, pm: lambda c, p: v(c, pm(p)))(v, pm),
        )
        keymap[f.key] = w.key
        posmaps[f.key] = pm
        fams.append(w)

    def locate(lab):
        hit = g._locate(lab)
        if hit is None:
            return None
        key, c, q = hit
        if key not in keymap:
            return None
        return (keymap[key], c, posmaps[key](q))

    return BasisGraph(fams, locate, {w.conj() for w in g.weights})


def _merged_kind(bkind, akind):
    return {
        ("backward", "forward"): "bi",
        ("backward", "finite"): "backward",
        ("finite", "forward"): "forward",
        ("finite", "finite"): "finite",
    }[(bkind, akind)]


def _merge_pair(bf: Family, bc, af: Family, ac):
    """Chain obtained by linking the end of B's chain to the start of A's chain.

    Returns the new single-copy family and position maps from the B and A
    pieces into it.
    """
    kind = _merged_kind(bf.kind, af.kind)
    nb, na = bf.length, af.length
    if kind == "bi":
        bmap, amap = (lambda q: 1 - q), (lambda q: q)

        def vertex(c, m):
            return bf.vertex(bc, 1 - m) if m <= 0 else af.vertex(ac, m)
    elif kind == "backward":
        bmap, amap = (lambda q: na + q), (lambda q: na - q + 1)

        def vertex(c, m):
            return af.vertex(ac, na - m + 1) if m <= na else bf.vertex(bc, m - na)
    else:
        bmap, amap = (lambda q: q), (lambda q: nb + q)

        def vertex(c, m):
            return bf.vertex(bc, m) if m <= nb else af.vertex(ac, m - nb)

    fam = _single(kind, nb + na, vertex, bf.addressable and af.addressable)
    return fam, bmap, amap


def _enumerate(fams) -> Iterator:
    """Deterministic enumeration of (family, copy): finite families in order,
    then the infinite ones interleaved round-robin."""
    for f in fams:
        if f.count.is_finite:
            for c in f.copies():
                yield f, c
    infinite = [f for f in fams if f.count.is_inf]
    iters = [f.copies() for f in infinite]
    while infinite:
        for f, it in zip(infinite, iters):
            yield f, next(it)


def _family_sequence(fams, length) -> list:
    seq = []
    for f in fams:
        if f.count.is_finite:
            seq.extend([f] * int(f.count))
    infinite = [f for f in fams if f.count.is_inf]
    i = 0
    while len(seq) < length and infinite:
        seq.append(infinite[i % len(infinite)])
        i += 1
    return seq[:length]


def _rule_pairing(rule, bfams, afams):
    """Resolve a pairing rule to explicit (bfam, bcopy, afam, acopy) pairs, or,
    when both sides are infinite, to per-family-pair counts."""
    bkinds, akinds = WITNESS_RULES[rule]
    bsel = [f for f in bfams if f.kind in bkinds]
    asel = [f for f in afams if f.kind in akinds]
    btotal = sum((f.count for f in bsel), ExtNat(0))
    atotal = sum((f.count for f in asel), ExtNat(0))
    if btotal.is_finite or atotal.is_finite:
        n = int(min(btotal, atotal))
        pairs = [
            (bf, bc, af, ac)
            for (bf, bc), (af, ac) in itertools.islice(zip(_enumerate(bsel), _enumerate(asel)), n)
        ]
        return pairs, None
    fin_b = sum(int(f.count) for f in bsel if f.count.is_finite)
    fin_a = sum(int(f.count) for f in asel if f.count.is_finite)
    p = sum(1 for f in bsel if f.count.is_inf)
    q = sum(1 for f in asel if f.count.is_inf)
    head = max(fin_b, fin_a)
    period = p * q // math.gcd(p, q)
    bseq = _family_sequence(bsel, head + period)
    aseq = _family_sequence(asel, head + period)
    counts: dict = {}
    for i, (bf, af) in enumerate(zip(bseq, aseq)):
        prev = counts.get((bf, af), ExtNat(0))
        counts[(bf, af)] = INF if i >= head else prev + 1
    return None, (counts, bsel, asel)


def explicit_pairing(rule, ga: BasisGraph, gb: BasisGraph):
    """``(B chain end, A chain start)`` label pairs realised by ``rule``, or
    None when the pairing is infinite or touches unaddressable vertices."""
    pairs, opaque = _rule_pairing(rule, gb.families, ga.families)
    if opaque is not None:
        return None
    out = []
    for bf, bc, af, ac in pairs:
        if not (bf.addressable and af.addressable):
            return None
        end = 1 if bf.kind == "backward" else bf.length
        out.append((bf.vertex(bc, end), af.vertex(ac, 1)))
    return out


def _lower_block(e: TriBlock) -> BasisGraph:
    ga, gb = lower_to_graph(e.a), lower_to_graph(e.b)
    wrapped, keymap = {}, {}
    for side, g in ((1, ga), (2, gb)):
        for f in g.families:
            v = f._vertex
            w = f.derive(vertex=None if v is None else (lambda v, s: lambda c, p: (s,) + v(c, p))(v, side))
            keymap[(side, f.key)] = w.key
            wrapped[w.key] = w
    afams = [wrapped[keymap[(1, f.key)]] for f in ga.families]
    bfams = [wrapped[keymap[(2, f.key)]] for f in gb.families]

    pairs = []
    opaque = None
    if e.c.rule is not None:
        pairs, opaque = _rule_pairing(e.c.rule, bfams, afams)
    else:
        for src, tgt, _w in e.c.pairs:
            hb, ha = gb.locate(src), ga.locate(tgt)
            if hb is None:
                raise IndexOutOfSpace(f"witness source {src} is not a basis vector of B")
            if ha is None:
                raise IndexOutOfSpace(f"witness target {tgt} is not a basis vector of A")
            bf, bc, bp = hb
            af, ac, ap = ha
            if not (bf.addressable and af.addressable):
                raise NotGraphExpressible("witness touches a vector outside the basis-aligned class")
            if not bf.is_end(bp):
                raise NotGraphExpressible(
                    f"witness source {src} is not a chain end of B; M_C would leave the basis-graph class"
                )
            if not af.is_start(ap):
                raise NotGraphExpressible(
                    f"witness target {tgt} is not a chain start of A; M_C would leave the basis-graph class"
                )
            pairs.append((wrapped[keymap[(2, bf.key)]], bc, wrapped[keymap[(1, af.key)]], ac))

    removed: dict = {}
    moved: dict = {}
    merged = []
    for bf, bc, af, ac in pairs or ():
        fam, bmap, amap = _merge_pair(bf, bc, af, ac)
        merged.append(fam)
        removed.setdefault(bf.key, set()).add(bc)
        removed.setdefault(af.key, set()).add(ac)
        moved[(bf.key, bc)] = (fam.key, bmap)
        moved[(af.key, ac)] = (fam.key, amap)

    if opaque is not None:
        counts, bsel, asel = opaque
        gone = {f.key for f in bsel} | {f.key for f in asel}
        for (bf, af), n in counts.items():
            kind = _merged_kind(bf.kind, af.kind)
            merged.append(Family(kind, bf.length + af.length, n, _copies_upto(n), _has_upto(n), None, False))
        families = [f for k, f in wrapped.items() if k not in gone]
    else:
        families = [f.without(removed.get(k, ())) for k, f in wrapped.items()]
    families.extend(merged)

    def locate(lab):
        side = lab[0]
        if side not in (1, 2):
            return None
        g = ga if side == 1 else gb
        hit = g._locate(lab[1:])
        if hit is None:
            return None
        key, c, q = hit
        wk = keymap.get((side, key))
        if wk is None:
            return None
        if (wk, c) in moved:
            mk, pm = moved[(wk, c)]
            return (mk, 1, pm(q))
        return (wk, c, q)

    return BasisGraph(families, locate, ga.weights | gb.weights | e.c.weights())


@lru_cache(maxsize=4096)
def lower_to_graph(e: Expr) -> BasisGraph:
    """Basis-graph form of a graph-expressible expression."""
    if isinstance(e, DirectSum):
        return _lower_sum(e)
    if isinstance(e, Amplify):
        return _lower_amplify(e)
    if isinstance(e, Power):
        return _lower_power(e)
    if isinstance(e, Adjoint):
        return _lower_adjoint(e)
    if isinstance(e, TriBlock):
        return _lower_block(e)
    return _lower_atom(e)
