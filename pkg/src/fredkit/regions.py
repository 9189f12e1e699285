"""Exact planar regions built from points, circles and annuli.

Around a fixed center a region is a :class:`RadialSet`: a subset of
``[0, ∞)`` in the squared distance ``r²``, stored as sorted breakpoints with
an inclusion flag for each breakpoint and for each open gap between them.
A :class:`Region` is a union of single-center radial sets plus "meet" terms,
each an intersection of radial sets around distinct centers.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from .arith import GaussianRational, gq

__all__ = ["RadialSet", "RegionCell", "Region", "region_ops", "member"]


def _frac_json(x: Fraction):
    return [x.numerator, x.denominator]


@dataclass(frozen=True)
class RadialSet:
    points: tuple = (Fraction(0),)
    at: tuple = (False,)
    gaps: tuple = (False,)

    def __post_init__(self):
        pts = [Fraction(p) for p in self.points]
        at, gaps = list(self.at), list(self.gaps)
        if not pts or pts[0] != 0 or len(at) != len(pts) or len(gaps) != len(pts):
            raise ValueError("malformed radial set")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("breakpoints must increase")
        i = 1
        while i < len(pts):
            if at[i] == gaps[i - 1] == gaps[i]:
                del pts[i], at[i], gaps[i]
            else:
                i += 1
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "at", tuple(bool(x) for x in at))
        object.__setattr__(self, "gaps", tuple(bool(x) for x in gaps))

    @classmethod
    def empty(cls) -> "RadialSet":
        return cls()

    @classmethod
    def full(cls) -> "RadialSet":
        return cls((0,), (True,), (True,))

    @classmethod
    def origin(cls) -> "RadialSet":
        return cls((0,), (True,), (False,))

    @classmethod
    def sphere(cls, r2) -> "RadialSet":
        r2 = Fraction(r2)
        if r2 == 0:
            return cls.origin()
        return cls((0, r2), (False, True), (False, False))

    @classmethod
    def band(cls, inner, outer=None) -> "RadialSet":
        """Open annulus ``inner < r² < outer``; ``outer=None`` means no outer bound."""
        inner = Fraction(inner)
        pts, at, gaps = [Fraction(0)], [False], [inner == 0]
        if inner > 0:
            pts.append(inner)
            at.append(False)
            gaps.append(True)
        if outer is not None:
            outer = Fraction(outer)
            if outer <= inner:
                raise ValueError("annulus needs inner < outer")
            pts.append(outer)
            at.append(False)
            gaps.append(False)
        return cls(tuple(pts), tuple(at), tuple(gaps))

    @classmethod
    def disk(cls, r2, closed=True) -> "RadialSet":
        s = cls.band(0, r2) | cls.origin()
        return s | cls.sphere(r2) if closed else s

    def member(self, r2) -> bool:
        r2 = Fraction(r2)
        i = bisect_right(self.points, r2) - 1
        return self.at[i] if self.points[i] == r2 else self.gaps[i]

    def _refine(self, pts):
        at, gaps = [], []
        for p in pts:
            i = bisect_right(self.points, p) - 1
            at.append(self.at[i] if self.points[i] == p else self.gaps[i])
            gaps.append(self.gaps[i])
        return at, gaps

    def combine(self, other: "RadialSet", fn) -> "RadialSet":
        pts = sorted(set(self.points) | set(other.points))
        a1, g1 = self._refine(pts)
        a2, g2 = other._refine(pts)
        return RadialSet(
            tuple(pts),
            tuple(fn(x, y) for x, y in zip(a1, a2)),
            tuple(fn(x, y) for x, y in zip(g1, g2)),
        )

    def __or__(self, other):
        return self.combine(other, lambda x, y: x or y)

    def __and__(self, other):
        return self.combine(other, lambda x, y: x and y)

    def complement(self) -> "RadialSet":
        return RadialSet(self.points, tuple(not x for x in self.at), tuple(not x for x in self.gaps))

    def is_empty(self) -> bool:
        return not any(self.at) and not any(self.gaps)

    def is_full(self) -> bool:
        return all(self.at) and all(self.gaps)

    def issubset(self, other: "RadialSet") -> bool:
        return (self | other) == other

    def pieces(self):
        """Maximal elementary cells: ``("at", r2)`` or ``("gap", lo, hi)``."""
        out = []
        for i, p in enumerate(self.points):
            nxt = self.points[i + 1] if i + 1 < len(self.points) else None
            if self.at[i]:
                out.append(("at", p))
            if self.gaps[i]:
                out.append(("gap", p, nxt))
        return out

    def sample(self):
        """Some r² in the set, or None if empty."""
        for piece in self.pieces():
            if piece[0] == "at":
                return piece[1]
            lo, hi = piece[1], piece[2]
            return lo + 1 if hi is None else (lo + hi) / 2
        return None


ALL = RadialSet.full()
NONE = RadialSet.empty()
POINT = RadialSet.origin()


def _spheres_miss(meet: dict) -> bool:
    """True when two circle factors provably do not meet."""
    circles = [
        (c, rs.points[-1])
        for c, rs in meet.items()
        if len(rs.points) == 2 and rs == RadialSet.sphere(rs.points[-1])
    ]
    for i, (c1, a) in enumerate(circles):
        for c2, b in circles[i + 1:]:
            d = (c1 - c2).abs2()
            # |sqrt a - sqrt b| <= |c1 - c2| <= sqrt a + sqrt b, squared without roots
            t = d - a - b
            if t * t > 4 * a * b:
                return True
    return False


@dataclass(frozen=True)
class RegionCell:
    """A point, a circle, or an open annulus (outer ``None`` for unbounded)."""

    kind: str
    center: GaussianRational
    inner: Fraction = Fraction(0)
    outer: Fraction | None = None

    @classmethod
    def point(cls, z) -> "RegionCell":
        return cls("point", gq(z))

    @classmethod
    def circle(cls, center, r2) -> "RegionCell":
        r2 = Fraction(r2)
        if r2 == 0:
            return cls.point(center)
        return cls("circle", gq(center), r2, r2)

    @classmethod
    def annulus(cls, center, inner, outer=None) -> "RegionCell":
        return cls("annulus", gq(center), Fraction(inner), None if outer is None else Fraction(outer))

    def radial(self) -> RadialSet:
        if self.kind == "point":
            return RadialSet.origin()
        if self.kind == "circle":
            return RadialSet.sphere(self.inner)
        return RadialSet.band(self.inner, self.outer)

    def to_json(self):
        out = {"kind": self.kind, "center": self.center.to_json()}
        if self.kind == "circle":
            out["r2"] = _frac_json(self.inner)
        elif self.kind == "annulus":
            out["inner_r2"] = _frac_json(self.inner)
            out["outer_r2"] = "inf" if self.outer is None else _frac_json(self.outer)
        return out


def _cells_of(center, rs: RadialSet):
    cells = []
    for piece in rs.pieces():
        if piece[0] == "at":
            cells.append(RegionCell.circle(center, piece[1]))
        else:
            cells.append(RegionCell.annulus(center, piece[1], piece[2]))
    return cells


def _key(center: GaussianRational):
    return center.sort_key()


def _meet_key(meet):
    return tuple((_key(c), rs.points, rs.at, rs.gaps) for c, rs in meet)


def _intersect_meets(m1: dict, m2: dict):
    out = dict(m1)
    for c, rs in m2.items():
        out[c] = out[c] & rs if c in out else rs
        if out[c].is_empty():
            return None
    return {c: rs for c, rs in out.items() if not rs.is_full()}


def _in_meet(z, meet) -> bool:
    return all(rs.member((z - c).abs2()) for c, rs in meet)


class Region:
    """Immutable exact subset of the complex plane."""

    __slots__ = ("radial", "meets")

    def __init__(self, radial=None, meets=()):
        terms = []
        for c, rs in dict(radial or {}).items():
            terms.append({gq(c): rs})
        for m in meets:
            terms.append({gq(c): rs for c, rs in (m.items() if isinstance(m, dict) else m)})
        radial, meets = self._canonical(terms)
        object.__setattr__(self, "radial", radial)
        object.__setattr__(self, "meets", meets)

    def __setattr__(self, name, value):
        raise AttributeError("Region is immutable")

    @staticmethod
    def _canonical(terms):
        single: dict = {}
        multi = []
        for t in terms:
            t = {c: rs for c, rs in t.items() if not rs.is_full()}
            if any(rs.is_empty() for rs in t.values()):
                continue
            if not t:
                return ((GaussianRational(0), ALL),), ()
            if len(t) == 1:
                (c, rs), = t.items()
                single[c] = single[c] | rs if c in single else rs
            else:
                pin = next((c for c, rs in t.items() if rs == POINT), None)
                if pin is not None:
                    # a meet with a point factor is that point or nothing
                    if _in_meet(pin, t.items()):
                        single[pin] = single[pin] | POINT if pin in single else POINT
                elif not _spheres_miss(t):
                    multi.append(t)
        if any(rs.is_full() for rs in single.values()):
            return ((GaussianRational(0), ALL),), ()
        # a meet whose factor at c already lies in the single-center set at c is redundant
        kept = []
        for m in multi:
            if any(c in single and rs.issubset(single[c]) for c, rs in m.items()):
                continue
            kept.append(m)
        pruned = []
        for i, m in enumerate(kept):
            dominated = False
            for j, o in enumerate(kept):
                if i == j or not set(o) <= set(m):
                    continue
                if all(m[c].issubset(o[c]) for c in o):
                    # identical meets: keep the first one only
                    if o == m and j > i:
                        continue
                    dominated = True
                    break
            if not dominated:
                pruned.append(m)
        meets = tuple(sorted((tuple(sorted(m.items(), key=lambda x: _key(x[0]))) for m in pruned), key=_meet_key))

        def covered_elsewhere(z, skip):
            for c, rs in single.items():
                if c != skip and rs.member((z - c).abs2()):
                    return True
            return any(_in_meet(z, m) for m in meets)

        # drop isolated centers already covered by other terms
        for c in list(single):
            rs = single[c]
            if rs.at[0] and covered_elsewhere(c, c):
                rs = RadialSet(rs.points, (False,) + rs.at[1:], rs.gaps)
            if rs.is_empty():
                del single[c]
            else:
                single[c] = rs
        radial = tuple(sorted(single.items(), key=lambda x: _key(x[0])))
        return radial, meets

    # constructors
    @classmethod
    def empty(cls) -> "Region":
        return cls()

    @classmethod
    def plane(cls) -> "Region":
        return cls({GaussianRational(0): ALL})

    @classmethod
    def around(cls, center, rs: RadialSet) -> "Region":
        return cls({gq(center): rs})

    @classmethod
    def of(cls, *cells: RegionCell) -> "Region":
        out = cls()
        for cell in cells:
            out = out | cls.around(cell.center, cell.radial())
        return out

    @classmethod
    def point(cls, z) -> "Region":
        return cls.of(RegionCell.point(z))

    @classmethod
    def circle(cls, center, r2) -> "Region":
        return cls.of(RegionCell.circle(center, r2))

    @classmethod
    def disk(cls, center, r2, closed=True) -> "Region":
        return cls.around(center, RadialSet.disk(r2, closed))

    # queries
    def _terms(self):
        return [{c: rs} for c, rs in self.radial] + [dict(m) for m in self.meets]

    def member(self, z) -> bool:
        z = gq(z)
        if any(rs.member((z - c).abs2()) for c, rs in self.radial):
            return True
        return any(_in_meet(z, m) for m in self.meets)

    __contains__ = member

    def is_empty(self) -> bool:
        return not self.radial and not self.meets

    def is_plane(self) -> bool:
        return len(self.radial) == 1 and self.radial[0][1].is_full()

    def centers(self):
        cs = {c for c, _ in self.radial}
        for m in self.meets:
            cs.update(c for c, _ in m)
        return sorted(cs, key=_key)

    # boolean algebra
    def __or__(self, other: "Region") -> "Region":
        return Region(meets=self._terms() + other._terms())

    def __and__(self, other: "Region") -> "Region":
        terms = []
        for t1, t2 in product(self._terms(), other._terms()):
            m = _intersect_meets(t1, t2)
            if m is not None:
                terms.append(m if m else {GaussianRational(0): ALL})
        return Region(meets=terms)

    def complement(self) -> "Region":
        out = Region.plane()
        for t in self._terms():
            out = out & Region(meets=[{c: rs.complement()} for c, rs in t.items()])
        return out

    def __invert__(self):
        return self.complement()

    def __sub__(self, other: "Region") -> "Region":
        return self & other.complement()

    def issubset(self, other: "Region") -> bool:
        """Exact when the difference collapses to single-center terms."""
        return (self - other).is_empty()

    def conj(self) -> "Region":
        """Complex-conjugate reflection."""
        return Region(meets=[{c.conj(): rs for c, rs in t.items()} for t in self._terms()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        return self.radial == other.radial and self.meets == other.meets

    def __hash__(self):
        return hash((self.radial, self.meets))

    def cells(self):
        out = []
        for c, rs in self.radial:
            out.extend(_cells_of(c, rs))
        return out

    def to_json(self):
        return {
            "cells": [cell.to_json() for cell in self.cells()],
            "meets": [
                [[cell.to_json() for cell in _cells_of(c, rs)] for c, rs in m] for m in self.meets
            ],
        }

    def describe(self) -> str:
        if self.is_empty():
            return "empty set"
        if self.is_plane():
            return "whole plane"
        parts = [_describe_radial(c, rs) for c, rs in self.radial]
        for m in self.meets:
            parts.append("(" + " and ".join(_describe_radial(c, rs) for c, rs in m) + ")")
        return " ∪ ".join(parts)

    def __repr__(self):
        return f"Region({self.describe()})"


def _radius_text(r2: Fraction) -> str:
    n, d = isqrt(r2.numerator), isqrt(r2.denominator)
    if n * n == r2.numerator and d * d == r2.denominator:
        return f"radius {Fraction(n, d)}"
    return f"radius² {r2}"


def _describe_radial(c: GaussianRational, rs: RadialSet) -> str:
    where = "" if c == 0 else f" center {c}"
    pieces = rs.pieces()
    unit = c == 0
    if rs == RadialSet.origin():
        return f"point {c}"
    if len(rs.points) == 2:
        r2 = rs.points[1]
        named = {
            RadialSet.sphere(r2): "circle",
            RadialSet.disk(r2, True): "closed disk",
            RadialSet.disk(r2, False): "open disk",
            RadialSet.disk(r2, True).complement(): "open exterior of disk",
            RadialSet.disk(r2, False).complement(): "closed exterior of disk",
        }.get(rs)
        if named is not None:
            if unit and r2 == 1:
                return {
                    "circle": "unit circle",
                    "closed disk": "closed unit disk",
                    "open disk": "open unit disk",
                }.get(named, named + " of radius 1")
            return f"{named}{where} {_radius_text(r2)}"
    texts = []
    for piece in pieces:
        if piece[0] == "at":
            if piece[1] == 0:
                texts.append(f"point {c}")
            elif unit and piece[1] == 1:
                texts.append("unit circle")
            else:
                texts.append(f"circle{where} {_radius_text(piece[1])}")
        else:
            hi = "∞" if piece[2] is None else str(piece[2])
            texts.append(f"annulus{where} {piece[1]} < r² < {hi}")
    return " ∪ ".join(texts)


def region_ops(a: Region, b: Region | None, op: str):
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    if op == "complement":
        return a.complement()
    if op == "equals":
        return a == b
    raise ValueError(f"unknown region op {op!r}")


def member(z, r: Region) -> bool:
    return r.member(z)
