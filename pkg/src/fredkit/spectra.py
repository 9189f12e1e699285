"""Invariants of ``T - λ`` as λ ranges over the plane, and the spectra built from them.

Every expression is first pushed to a sum/amplification tree over atoms
(powers and adjoints are absorbed into the atoms). Each atom's profile is
constant on the cells cut out by its circles and points:

* ``mu + c U``: inside ``|λ - mu| < |c|`` a forward ray, on the circle
  injective with dense non-closed range, outside invertible;
* ``mu + c U*``: a backward ray inside, injective with dense non-closed
  range on the circle, invertible outside;
* ``mu + c W``: non-closed dense range on the circle, invertible elsewhere;
* finite blocks: the rank chain of ``(M - v)^k`` at each eigenvalue ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .arith import INF, GaussianRational, dense_rank, ext, gq, matmul
from .errors import UnsupportedForLambda
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
    adjoint,
    direct_sum,
)
from .growth import GrowthSeq
from .invariants import FredholmSignature, Profile
from .regions import RadialSet, Region

__all__ = [
    "SPECTRUM_KINDS",
    "COMPLETION_KINDS",
    "PiecewiseSignature",
    "normalize",
    "profile_at",
    "signature_at",
    "piecewise_signature",
    "spectrum",
    "spectrum_pointwise",
    "completion_spectrum",
    "completion_predicate",
]

# kind -> the class T - λ must belong to for λ to lie outside the spectrum
SPECTRUM_KINDS = {
    "sigma": "invertible",
    "l": "left_invertible",
    "r": "right_invertible",
    "e": "fredholm",
    "sf_plus": "upper_semi_fredholm",
    "sf_minus": "lower_semi_fredholm",
    "b": "browder",
    "ab": "upper_semi_browder",
    "sb": "lower_semi_browder",
}

# a countable amplification lies in a class iff the summand lies in this one
_AMPLIFIED = {
    "sigma": "sigma",
    "l": "l",
    "r": "r",
    "e": "sigma",
    "sf_plus": "l",
    "sf_minus": "r",
    "b": "sigma",
    "ab": "l",
    "sb": "r",
}

_ADJOINT_KIND = {
    "sigma": "sigma",
    "l": "r",
    "r": "l",
    "e": "e",
    "sf_plus": "sf_minus",
    "sf_minus": "sf_plus",
    "b": "b",
    "ab": "sb",
    "sb": "ab",
}

COMPLETION_KINDS = ("sigma", "ab", "sb", "b")

ZERO_SEQ = GrowthSeq.zero()
INVERTIBLE = Profile(ZERO_SEQ, ZERO_SEQ, True)
FORWARD_RAY = Profile(ZERO_SEQ, GrowthSeq.linear(1), True)
BACKWARD_RAY = Profile(GrowthSeq.linear(1), ZERO_SEQ, True)
DENSE_RANGE = Profile(ZERO_SEQ, GrowthSeq.linear(INF), False)


# -- normalisation ---------------------------------------------------------------


def _matpow(rows, k):
    out = rows
    for _ in range(k - 1):
        out = matmul(out, rows)
    return tuple(tuple(r) for r in out)


def _atom_power(a: Expr, k: int) -> Expr:
    if k == 1:
        return a
    if isinstance(a, (Shift, BackShift, Bilateral)):
        if a.mu:
            raise UnsupportedForLambda(f"power of a translated shift {a!r} has no atom form")
        # U^k splits into k copies of U along residues mod k
        return direct_sum([type(a)(a.c**k)] * k)
    if isinstance(a, Jordan):
        sizes = [(a.n - r + k - 1) // k for r in range(min(k, a.n))]
        return direct_sum([Jordan(s) for s in sizes])
    if isinstance(a, Diag):
        merged: dict = {}
        for v, m in a.entries:
            w = v**k
            merged[w] = merged[w] + m if w in merged else m
        return Diag(tuple(merged.items()))
    if isinstance(a, TriMatrix):
        return TriMatrix(_matpow(a.rows, k))
    raise TypeError(f"not an atom: {a!r}")


def normalize(e: Expr, k: int = 1, adj: bool = False) -> Expr:
    """Equivalent tree of DirectSum/Amplify over atoms, for ``(e*)^k`` if ``adj``."""
    if isinstance(e, Adjoint):
        return normalize(e.inner, k, not adj)
    if isinstance(e, Power):
        return normalize(e.inner, k * e.k, adj)
    if isinstance(e, DirectSum):
        return DirectSum(tuple(normalize(p, k, adj) for p in e.parts))
    if isinstance(e, Amplify):
        return Amplify(normalize(e.inner, k, adj))
    if isinstance(e, TriBlock):
        if not e.c.is_zero:
            raise UnsupportedForLambda("λ-invariants of a block with nonzero corner are not tabulated")
        return normalize(DirectSum((e.a, e.b)), k, adj)
    atom = adjoint(e) if adj else e
    return _atom_power(atom, k)


def _atoms(ne: Expr):
    if isinstance(ne, DirectSum):
        for p in ne.parts:
            yield from _atoms(p)
    elif isinstance(ne, Amplify):
        yield from _atoms(ne.inner)
    else:
        yield ne


def _eigenvalues(a: Expr):
    if isinstance(a, Jordan):
        return [GaussianRational(0)]
    if isinstance(a, Diag):
        return [v for v, _ in a.entries]
    if isinstance(a, TriMatrix):
        return list(dict.fromkeys(a.rows[i][i] for i in range(a.n)))
    return []


def _breakpoints(ne: Expr) -> dict:
    """center -> set of squared radii where some atom changes behaviour."""
    out: dict = {}
    for a in _atoms(ne):
        if isinstance(a, (Shift, BackShift, Bilateral)):
            out.setdefault(a.mu, {Fraction(0)}).add(a.c.abs2())
        else:
            for v in _eigenvalues(a):
                out.setdefault(v, {Fraction(0)})
    return out


# -- atom tables ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _eigen_profile(rows, v) -> Profile:
    n = len(rows)
    shifted = tuple(
        tuple(x - v if i == j else x for j, x in enumerate(r)) for i, r in enumerate(rows)
    )
    dims, power = [0], shifted
    while True:
        dims.append(n - dense_rank(power))
        if dims[-1] == dims[-2]:
            break
        power = matmul(power, shifted)
    steps = tuple(dims[k] - dims[k - 1] for k in range(1, len(dims) - 1))
    seq = GrowthSeq(steps, 0)
    return Profile(seq, seq, True)


def _atom_profile(a: Expr, rel) -> Profile:
    """``rel(center, r2)`` is the sign of ``|λ - center|² - r2``."""
    if isinstance(a, (Shift, BackShift, Bilateral)):
        side = rel(a.mu, a.c.abs2())
        if side > 0:
            return INVERTIBLE
        if side == 0:
            return DENSE_RANGE
        if isinstance(a, Shift):
            return FORWARD_RAY
        if isinstance(a, BackShift):
            return BACKWARD_RAY
        return INVERTIBLE
    if isinstance(a, Jordan):
        if rel(GaussianRational(0), 0) == 0:
            seq = GrowthSeq.capped(a.n)
            return Profile(seq, seq, True)
        return INVERTIBLE
    if isinstance(a, Diag):
        for v, m in a.entries:
            if rel(v, 0) == 0:
                seq = GrowthSeq((m,), 0)
                return Profile(seq, seq, True)
        return INVERTIBLE
    if isinstance(a, TriMatrix):
        for v in _eigenvalues(a):
            if rel(v, 0) == 0:
                return _eigen_profile(a.rows, v)
        return INVERTIBLE
    raise TypeError(f"not an atom: {a!r}")


def _profile(ne: Expr, rel) -> Profile:
    if isinstance(ne, DirectSum):
        out = None
        for p in ne.parts:
            q = _profile(p, rel)
            out = q if out is None else out + q
        return out
    if isinstance(ne, Amplify):
        return _profile(ne.inner, rel).amplify()
    return _atom_profile(ne, rel)


def _point_rel(lam: GaussianRational):
    def rel(center, r2):
        d = (lam - center).abs2()
        return (d > r2) - (d < r2)

    return rel


def profile_at(e: Expr, lam) -> Profile:
    """Exact kernel/cokernel growth of ``e - λ``."""
    return _profile(normalize(e), _point_rel(gq(lam)))


def signature_at(e: Expr, lam) -> FredholmSignature:
    return profile_at(e, lam).signature()


# -- cell arrangement --------------------------------------------------------------


def _radial_cells(bps) -> list:
    pts = sorted(bps)
    cells = []
    for i, p in enumerate(pts):
        cells.append(("at", p))
        cells.append(("gap", p, pts[i + 1] if i + 1 < len(pts) else None))
    return cells


def _cell_radial(cell) -> RadialSet:
    if cell[0] == "at":
        return RadialSet.sphere(cell[1])
    return RadialSet.band(cell[1], cell[2])


def _cell_rel(cell, r2) -> int:
    if cell[0] == "at":
        return (cell[1] > r2) - (cell[1] < r2)
    lo, hi = cell[1], cell[2]
    if r2 <= lo:
        return 1
    if hi is not None and r2 >= hi:
        return -1
    raise AssertionError("breakpoint missing from the arrangement")


def _in_cell(cell, r2) -> bool:
    if cell[0] == "at":
        return cell[1] == r2
    return cell[1] < r2 and (cell[2] is None or r2 < cell[2])


def _provably_empty(centers, choice) -> bool:
    pins = [c for c, cell in zip(centers, choice) if cell == ("at", 0)]
    if len(pins) > 1:
        return True
    if pins:
        z = pins[0]
        return not all(_in_cell(cell, (z - c).abs2()) for c, cell in zip(centers, choice))
    circles = [(c, cell[1]) for c, cell in zip(centers, choice) if cell[0] == "at"]
    for i, (c1, a) in enumerate(circles):
        for c2, b in circles[i + 1:]:
            t = (c1 - c2).abs2() - a - b
            if t * t > 4 * a * b:
                return True
    return False


class _Arrangement:
    """Joint cells of several centers' radial partitions."""

    def __init__(self, *bp_maps):
        merged: dict = {}
        for m in bp_maps:
            for c, bps in m.items():
                merged.setdefault(c, set()).update(bps)
        self.centers = sorted(merged, key=lambda c: c.sort_key())
        self.cells = [_radial_cells(merged[c]) for c in self.centers]

    def joint(self):
        """Yield ``(index tuple, rel, empty?)`` for every joint cell."""
        for idx in product(*(range(len(cs)) for cs in self.cells)):
            choice = [self.cells[d][i] for d, i in enumerate(idx)]
            by_center = dict(zip(self.centers, choice))

            def rel(center, r2, by_center=by_center):
                return _cell_rel(by_center[center], r2)

            yield idx, rel, _provably_empty(self.centers, choice)

    def region_where(self, pred) -> Region:
        """Union of the joint cells where ``pred(rel)`` holds, with merging."""
        if not self.centers:
            return Region.plane() if pred(lambda c, r2: 1) else Region.empty()
        hits, care = set(), False
        for idx, rel, empty in self.joint():
            if empty:
                hits.add(idx)  # don't-care: adding an empty cell changes nothing
            elif pred(rel):
                hits.add(idx)
                care = True
        if not care:
            return Region.empty()
        terms = {tuple(frozenset((i,)) for i in idx) for idx in hits}
        for _ in range(2):
            for d in range(len(self.centers)):
                groups: dict = {}
                for t in terms:
                    rest = t[:d] + t[d + 1:]
                    groups[rest] = groups.get(rest, frozenset()) | t[d]
                terms = {rest[:d] + (s,) + rest[d:] for rest, s in groups.items()}
        meets = []
        for t in terms:
            meet = {}
            for d, s in enumerate(t):
                rs = RadialSet.empty()
                for i in s:
                    rs = rs | _cell_radial(self.cells[d][i])
                meet[self.centers[d]] = rs
            meets.append(meet)
        return Region(meets=meets)


@dataclass(frozen=True)
class PiecewiseSignature:
    """Exact partition of the plane with the signature of ``e - λ`` on each cell."""

    expr: Expr
    parts: tuple

    def at(self, lam) -> FredholmSignature:
        for region, sig in self.parts:
            if region.member(lam):
                return sig
        raise AssertionError("partition does not cover λ")

    def to_json(self):
        return [{"cell": r.to_json(), "signature": s.to_json()} for r, s in self.parts]


def piecewise_signature(e: Expr) -> PiecewiseSignature:
    ne = normalize(e)
    arr = _Arrangement(_breakpoints(ne))
    sigs = []
    for _, rel, empty in arr.joint():
        if not empty:
            sig = _profile(ne, rel).signature()
            if sig not in sigs:
                sigs.append(sig)
    parts = tuple(
        (arr.region_where(lambda rel, sig=sig: _profile(ne, rel).signature() == sig), sig)
        for sig in sigs
    )
    return PiecewiseSignature(e, parts)


def _fails(sig: FredholmSignature, kind: str) -> bool:
    return not getattr(sig, SPECTRUM_KINDS[kind])


def _check_kind(kind: str, allowed) -> None:
    if kind not in allowed:
        raise ValueError(f"unknown spectrum kind {kind!r}; expected one of {', '.join(allowed)}")


def spectrum(e: Expr, kind: str = "sigma") -> Region:
    """``{λ : e - λ`` is not in the class named by ``kind``}."""
    _check_kind(kind, SPECTRUM_KINDS)
    return _spectrum(normalize(e), kind)


def _spectrum(ne: Expr, kind: str) -> Region:
    if isinstance(ne, DirectSum):
        out = Region.empty()
        for p in ne.parts:
            out = out | _spectrum(p, kind)
        return out
    if isinstance(ne, Amplify):
        return _spectrum(ne.inner, _AMPLIFIED[kind])
    arr = _Arrangement(_breakpoints(ne))
    return arr.region_where(lambda rel: _fails(_profile(ne, rel).signature(), kind))


def spectrum_pointwise(e: Expr, kind: str, lam) -> bool:
    """Direct membership test from the signature of ``e - λ``."""
    _check_kind(kind, SPECTRUM_KINDS)
    return _fails(signature_at(e, lam), kind)


# -- completion spectra -----------------------------------------------------------------


def _lt(x, y) -> bool:
    return ext(x) < ext(y)


def completion_predicate(kind: str, sa: FredholmSignature, sb: FredholmSignature, form: str = "mul") -> bool:
    """True when λ lies in the intersection over C of the ``kind`` spectra of
    the block; ``sa``/``sb`` are the signatures of ``A - λ`` and ``B - λ``."""
    if kind == "sigma":
        return not sa.left_invertible or not sb.right_invertible or sb.alpha != sa.beta
    if kind == "ab":
        return (
            not sa.upper_semi_browder
            or (not sb.upper_semi_fredholm and sa.smul.is_finite)
            or (sa.fredholm and sb.upper_semi_fredholm and _lt(sa.smul, sb.bsmul))
        )
    if kind == "sb":
        return (
            not sb.lower_semi_browder
            or (not sa.lower_semi_fredholm and sb.bsmul.is_finite)
            or (sb.fredholm and sa.lower_semi_fredholm and _lt(sb.bsmul, sa.smul))
        )
    if kind == "b":
        head = not sa.upper_semi_browder or not sb.lower_semi_browder
        if form == "mul":
            return head or sb.bsmul != sa.smul
        if form == "dims":
            return head or sa.alpha + sb.alpha != sa.beta + sb.beta
        raise ValueError(f"unknown form {form!r}")
    raise ValueError(f"unknown completion kind {kind!r}")


def completion_spectrum(kind: str, a: Expr, b: Expr, form: str = "mul") -> Region:
    """The part of the ``kind`` spectrum of ``(A C; 0 B)`` that no corner C removes."""
    _check_kind(kind, COMPLETION_KINDS)
    na, nb = normalize(a), normalize(b)
    arr = _Arrangement(_breakpoints(na), _breakpoints(nb))

    def pred(rel):
        return completion_predicate(
            kind, _profile(na, rel).signature(), _profile(nb, rel).signature(), form
        )

    return arr.region_where(pred)


def adjoint_kind(kind: str) -> str:
    return _ADJOINT_KIND[kind]
