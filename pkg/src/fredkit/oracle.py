"""Brute-force cross-check by finite truncation.

The matrix side evaluates the expression tree directly on basis vectors and
never touches the basis-graph code. The prediction side walks the lowered
graph restricted to the same window: every maximal run of window vertices
along a chain acts as a nilpotent block, so ``dim N(M^k)`` is the sum of
``min(k, run length)`` over the runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .arith import GaussianRational
from .errors import NotGraphExpressible
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
)
from .graph import lower_to_graph

__all__ = [
    "TruncationReport",
    "window",
    "apply",
    "apply_adjoint",
    "truncate",
    "exact_rank",
    "truncated_growth_check",
]


def _add(out: dict, lab, w) -> None:
    if not w:
        return
    v = out.get(lab)
    v = w if v is None else v + w
    if v:
        out[lab] = v
    else:
        out.pop(lab, None)


def _linear(fn, vec: dict) -> dict:
    out: dict = {}
    for lab, w in vec.items():
        for lab2, w2 in fn(lab).items():
            _add(out, lab2, w * w2)
    return out


def _prefixed(p, vec: dict) -> dict:
    return {(p,) + lab: w for lab, w in vec.items()}


def apply(e: Expr, lab) -> dict:
    """``e`` applied to the basis vector ``lab``, as a sparse vector."""
    lab = tuple(lab)
    if isinstance(e, (Shift, BackShift, Bilateral)):
        (i,) = lab
        out: dict = {}
        _add(out, lab, e.mu)
        step = -1 if isinstance(e, BackShift) else 1
        if not (isinstance(e, BackShift) and i == 1):
            _add(out, (i + step,), e.c)
        return out
    if isinstance(e, Jordan):
        (i,) = lab
        return {} if i == 1 else {(i - 1,): GaussianRational(1)}
    if isinstance(e, Diag):
        slot, _copy = lab
        v = e.entries[slot - 1][0]
        return {lab: v} if v else {}
    if isinstance(e, TriMatrix):
        (j,) = lab
        return {(i + 1,): e.rows[i][j - 1] for i in range(e.n) if e.rows[i][j - 1]}
    if isinstance(e, (DirectSum, Amplify)):
        inner = e.parts[lab[0] - 1] if isinstance(e, DirectSum) else e.inner
        return _prefixed(lab[0], apply(inner, lab[1:]))
    if isinstance(e, Power):
        vec = {lab: GaussianRational(1)}
        for _ in range(e.k):
            vec = _linear(lambda x: apply(e.inner, x), vec)
        return vec
    if isinstance(e, Adjoint):
        return apply_adjoint(e.inner, lab)
    if isinstance(e, TriBlock):
        if e.c.rule is not None:
            raise NotGraphExpressible("the oracle needs an explicit witness, not a pairing rule")
        out = _prefixed(lab[0], apply(e.a if lab[0] == 1 else e.b, lab[1:]))
        if lab[0] == 2:
            for src, tgt, w in e.c.pairs:
                if src == lab[1:]:
                    _add(out, (1,) + tgt, w)
        return out
    raise TypeError(f"not an expression: {e!r}")


def apply_adjoint(e: Expr, lab) -> dict:
    """``e*`` applied to the basis vector ``lab``."""
    lab = tuple(lab)
    if isinstance(e, (Shift, BackShift, Bilateral)):
        (i,) = lab
        out: dict = {}
        _add(out, lab, e.mu.conj())
        step = 1 if isinstance(e, BackShift) else -1
        if not (isinstance(e, Shift) and i == 1):
            _add(out, (i + step,), e.c.conj())
        return out
    if isinstance(e, Jordan):
        (i,) = lab
        return {} if i == e.n else {(i + 1,): GaussianRational(1)}
    if isinstance(e, Diag):
        slot, _copy = lab
        v = e.entries[slot - 1][0]
        return {lab: v.conj()} if v else {}
    if isinstance(e, TriMatrix):
        (i,) = lab
        return {(j + 1,): e.rows[i - 1][j].conj() for j in range(e.n) if e.rows[i - 1][j]}
    if isinstance(e, (DirectSum, Amplify)):
        inner = e.parts[lab[0] - 1] if isinstance(e, DirectSum) else e.inner
        return _prefixed(lab[0], apply_adjoint(inner, lab[1:]))
    if isinstance(e, Power):
        vec = {lab: GaussianRational(1)}
        for _ in range(e.k):
            vec = _linear(lambda x: apply_adjoint(e.inner, x), vec)
        return vec
    if isinstance(e, Adjoint):
        return apply(e.inner, lab)
    if isinstance(e, TriBlock):
        if e.c.rule is not None:
            raise NotGraphExpressible("the oracle needs an explicit witness, not a pairing rule")
        out = _prefixed(lab[0], apply_adjoint(e.a if lab[0] == 1 else e.b, lab[1:]))
        if lab[0] == 1:
            for src, tgt, w in e.c.pairs:
                if tgt == lab[1:]:
                    _add(out, (2,) + src, w.conj())
        return out
    raise TypeError(f"not an expression: {e!r}")


def window(e: Expr, n: int) -> list:
    """Labels kept by the truncation: the first ``n`` vertices of each ray,
    ``n`` copies of each amplification, short finite blocks whole."""
    if isinstance(e, (Shift, BackShift)):
        return [(i,) for i in range(1, n + 1)]
    if isinstance(e, Bilateral):
        return [(i,) for i in range(n)]
    if isinstance(e, Jordan):
        return [(i,) for i in range(1, min(e.n, n) + 1)]
    if isinstance(e, Diag):
        out = []
        for slot, (_v, m) in enumerate(e.entries, 1):
            top = n if m.is_inf else min(int(m), n)
            out.extend((slot, c) for c in range(1, top + 1))
        return out
    if isinstance(e, TriMatrix):
        return [(i,) for i in range(1, e.n + 1)]
    if isinstance(e, DirectSum):
        return [(p,) + lab for p, part in enumerate(e.parts, 1) for lab in window(part, n)]
    if isinstance(e, Amplify):
        inner = window(e.inner, n)
        return [(c,) + lab for c in range(1, n + 1) for lab in inner]
    if isinstance(e, (Power, Adjoint)):
        return window(e.inner, n)
    if isinstance(e, TriBlock):
        return [(1,) + lab for lab in window(e.a, n)] + [(2,) + lab for lab in window(e.b, n)]
    raise TypeError(f"not an expression: {e!r}")


def _columns(e: Expr, n: int):
    labels = window(e, n)
    index = {lab: i for i, lab in enumerate(labels)}
    cols = []
    for lab in labels:
        cols.append({index[t]: w for t, w in apply(e, lab).items() if t in index})
    return labels, cols


def truncate(e: Expr, n: int) -> list:
    """Dense compression of ``e`` to ``window(e, n)``: entry [i][j] is the
    coefficient of label i in the image of label j."""
    labels, cols = _columns(e, n)
    zero = GaussianRational(0)
    mat = [[zero] * len(labels) for _ in labels]
    for j, col in enumerate(cols):
        for i, w in col.items():
            mat[i][j] = w
    return mat


# -- fraction-free rank over the Gaussian integers -------------------------------------


def _to_gaussian_ints(vec: dict) -> dict:
    den = 1
    for w in vec.values():
        den = lcm(den, w.re.denominator, w.im.denominator)
    out = {}
    for c, w in vec.items():
        re, im = w.re * den, w.im * den
        out[c] = (re.numerator, im.numerator)
    return out


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _content_free(vec: dict) -> dict:
    g = 0
    for a, b in vec.values():
        g = gcd(g, a, b)
    if g > 1:
        vec = {c: (a // g, b // g) for c, (a, b) in vec.items()}
    return vec


def exact_rank(vectors) -> int:
    """Rank of sparse vectors (dicts index -> GaussianRational)."""
    basis: dict = {}
    for v in vectors:
        r = _to_gaussian_ints(v)
        while r:
            lead = min(r)
            p = basis.get(lead)
            if p is None:
                basis[lead] = _content_free(r)
                break
            a, b = p[lead], r[lead]
            out = {}
            for c in set(r) | set(p):
                x = _gmul(a, r.get(c, (0, 0)))
                y = _gmul(b, p.get(c, (0, 0)))
                d = (x[0] - y[0], x[1] - y[1])
                if d != (0, 0):
                    out[c] = d
            r = _content_free(out)
    return len(basis)


def _mul_cols(cols_a, cols_b):
    """Columns of A·B given the columns of both."""
    out = []
    for col in cols_b:
        acc: dict = {}
        for t, w in col.items():
            for i, x in cols_a[t].items():
                _add(acc, i, x * w)
        out.append(acc)
    return out


# -- report ---------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationReport:
    n: int
    k_max: int
    dim: int
    runs: tuple
    predicted_kernel: tuple
    computed_kernel: tuple
    predicted_cokernel: tuple
    computed_cokernel: tuple

    @property
    def match(self) -> bool:
        return (
            self.predicted_kernel == self.computed_kernel
            and self.predicted_cokernel == self.computed_cokernel
        )

    def to_json(self):
        return {
            "n": self.n,
            "k_max": self.k_max,
            "dim": self.dim,
            "runs": list(self.runs),
            "predicted_kernel": list(self.predicted_kernel),
            "computed_kernel": list(self.computed_kernel),
            "predicted_cokernel": list(self.predicted_cokernel),
            "computed_cokernel": list(self.computed_cokernel),
            "match": self.match,
        }


def _runs(e: Expr, labels) -> list:
    """Lengths of maximal window runs along the chains of the lowered graph."""
    g = lower_to_graph(e)
    inside = set(labels)
    nxt, has_pred = {}, set()
    for lab in labels:
        s = g.succ(lab)
        if s == lab:
            continue  # loop: invertible scalar, no kernel
        nxt[lab] = s if s in inside else None
        if s in inside:
            has_pred.add(s)
    runs = []
    for lab in labels:
        if lab in nxt and lab not in has_pred:
            length, cur = 0, lab
            while cur is not None:
                length += 1
                cur = nxt[cur]
            runs.append(length)
    return runs


def truncated_growth_check(e: Expr, n: int, k_max: int) -> TruncationReport:
    labels, cols = _columns(e, n)
    runs = _runs(e, labels)
    dim = len(labels)
    predicted = tuple(sum(min(k, r) for r in runs) for k in range(1, k_max + 1))
    kernel, coker = [], []
    power = cols
    for k in range(1, k_max + 1):
        if k > 1:
            power = _mul_cols(cols, power)
        rank = exact_rank(power)
        kernel.append(dim - rank)
        # row rank equals column rank; computed separately as an extra check
        rows: list = [dict() for _ in range(dim)]
        for j, col in enumerate(power):
            for i, w in col.items():
                rows[i][j] = w
        coker.append(dim - exact_rank(rows))
    return TruncationReport(
        n, k_max, dim, tuple(sorted(runs)), predicted, tuple(kernel), predicted, tuple(coker)
    )

