"""Fredholm/Browder invariants at lambda = 0 from the chain census."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .arith import ExtNat, ext_diff
from .errors import NotGraphExpressible, NotLowerSemiBrowder, NotSemiFredholm, NotUpperSemiBrowder, UnsupportedForLambda
from .expr import Expr
from .graph import ChainCensus, lower_to_graph
from .growth import GrowthSeq, growth_slope

__all__ = [
    "Profile",
    "FredholmSignature",
    "FredholmClass",
    "NormalForm3",
    "NormalForm4",
    "UpperBrowderSplit",
    "LowerBrowderSplit",
    "census_profile",
    "profile",
    "kernel_growth",
    "signature",
    "samuel_multiplicities",
    "classify",
    "normal_form",
    "normal_form4",
    "decompose_upper_browder",
    "decompose_lower_browder",
]


@dataclass(frozen=True)
class FredholmSignature:
    alpha: ExtNat
    beta: ExtNat
    range_closed: bool
    asc: ExtNat
    des: ExtNat
    smul: ExtNat
    bsmul: ExtNat

    @property
    def invertible(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and self.range_closed

    @property
    def left_invertible(self) -> bool:
        return self.alpha == 0 and self.range_closed

    @property
    def right_invertible(self) -> bool:
        return self.beta == 0 and self.range_closed

    @property
    def upper_semi_fredholm(self) -> bool:
        return self.range_closed and self.alpha.is_finite

    @property
    def lower_semi_fredholm(self) -> bool:
        return self.range_closed and self.beta.is_finite

    @property
    def semi_fredholm(self) -> bool:
        return self.upper_semi_fredholm or self.lower_semi_fredholm

    @property
    def fredholm(self) -> bool:
        return self.upper_semi_fredholm and self.lower_semi_fredholm

    @property
    def browder(self) -> bool:
        return self.fredholm and self.asc.is_finite and self.des.is_finite

    @property
    def upper_semi_browder(self) -> bool:
        return self.upper_semi_fredholm and self.asc.is_finite

    @property
    def lower_semi_browder(self) -> bool:
        return self.lower_semi_fredholm and self.des.is_finite

    def index(self):
        """alpha - beta as int or ``"+inf"``/``"-inf"``; None when undefined."""
        if not self.semi_fredholm:
            return None
        return ext_diff(self.alpha, self.beta)

    def adjoint(self) -> "FredholmSignature":
        return FredholmSignature(
            self.beta, self.alpha, self.range_closed, self.des, self.asc, self.bsmul, self.smul
        )

    def to_json(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = v if isinstance(v, bool) else v.to_json()
        return out

    def __str__(self):
        closed = "closed" if self.range_closed else "not closed"
        return (
            f"α={self.alpha}, β={self.beta}, {closed}, asc={self.asc}, des={self.des}, "
            f"s_mul={self.smul}, b.s_mul={self.bsmul}"
        )


@dataclass(frozen=True)
class Profile:
    """Kernel and cokernel growth of the powers plus the closed-range flag."""

    alpha: GrowthSeq
    beta: GrowthSeq
    closed: bool = True

    def __add__(self, other: "Profile") -> "Profile":
        return Profile(self.alpha + other.alpha, self.beta + other.beta, self.closed and other.closed)

    def amplify(self) -> "Profile":
        return Profile(self.alpha.amplify(), self.beta.amplify(), self.closed)

    def swap(self) -> "Profile":
        return Profile(self.beta, self.alpha, self.closed)

    def signature(self) -> FredholmSignature:
        return FredholmSignature(
            alpha=self.alpha(1),
            beta=self.beta(1),
            range_closed=self.closed,
            asc=self.alpha.stabilization(),
            des=self.beta.stabilization(),
            smul=growth_slope(self.beta),
            bsmul=growth_slope(self.alpha),
        )


def census_profile(c: ChainCensus) -> Profile:
    """Per chain: backward ray adds k to alpha(T^k), forward ray adds k to
    beta(T^k), a finite chain of length n adds min(k, n) to both."""
    depth = c.max_length()
    shared = [ExtNat(0)] * depth
    for n, count in c.finite:
        for k in range(n):
            shared[k] = shared[k] + count
    alpha = GrowthSeq(tuple(s + c.backward for s in shared), c.backward)
    beta = GrowthSeq(tuple(s + c.forward for s in shared), c.forward)
    return Profile(alpha, beta, True)


def profile(e: Expr) -> Profile:
    try:
        g = lower_to_graph(e)
    except NotGraphExpressible:
        # translated shifts and non-nilpotent blocks: use the λ tables at 0
        from .spectra import profile_at

        try:
            return profile_at(e, 0)
        except UnsupportedForLambda:
            raise NotGraphExpressible(f"no invariants available for {e}") from None
    p = census_profile(g.census())
    return Profile(p.alpha, p.beta, g.range_closed())


def kernel_growth(e: Expr) -> tuple[GrowthSeq, GrowthSeq]:
    p = profile(e)
    return p.alpha, p.beta


def signature(e: Expr) -> FredholmSignature:
    return profile(e).signature()


def samuel_multiplicities(e: Expr) -> tuple[ExtNat, ExtNat]:
    """``(s_mul, b.s_mul)``: the cokernel and kernel growth rates."""
    s = signature(e)
    return s.smul, s.bsmul


FLAG_NAMES = (
    "invertible",
    "left_invertible",
    "right_invertible",
    "fredholm",
    "upper_semi_fredholm",
    "lower_semi_fredholm",
    "browder",
    "upper_semi_browder",
    "lower_semi_browder",
    "semi_fredholm",
    "shift_like",
    "backward_shift_like",
    "stationary",
    "pure_shift",
    "pure_backward_shift",
)


@dataclass(frozen=True)
class FredholmClass:
    invertible: bool
    left_invertible: bool
    right_invertible: bool
    fredholm: bool
    upper_semi_fredholm: bool
    lower_semi_fredholm: bool
    browder: bool
    upper_semi_browder: bool
    lower_semi_browder: bool
    semi_fredholm: bool
    shift_like: bool
    backward_shift_like: bool
    stationary: bool
    pure_shift: bool | None = None
    pure_backward_shift: bool | None = None

    @classmethod
    def from_signature(cls, s: FredholmSignature, census: ChainCensus | None = None):
        sf = s.semi_fredholm
        pure_shift = pure_back = None
        if census is not None:
            nothing_else = not census.finite and not census.bi and not census.loops
            pure_shift = sf and nothing_else and not census.backward and bool(census.forward)
            pure_back = sf and nothing_else and not census.forward and bool(census.backward)
        return cls(
            invertible=s.invertible,
            left_invertible=s.left_invertible,
            right_invertible=s.right_invertible,
            fredholm=s.fredholm,
            upper_semi_fredholm=s.upper_semi_fredholm,
            lower_semi_fredholm=s.lower_semi_fredholm,
            browder=s.browder,
            upper_semi_browder=s.upper_semi_browder,
            lower_semi_browder=s.lower_semi_browder,
            semi_fredholm=sf,
            shift_like=sf and s.bsmul == 0,
            backward_shift_like=sf and s.smul == 0,
            stationary=sf and s.bsmul == 0 and s.smul == 0,
            pure_shift=pure_shift,
            pure_backward_shift=pure_back,
        )

    def members(self) -> list[str]:
        return [name for name in FLAG_NAMES if getattr(self, name)]

    def to_json(self):
        return asdict(self)


def classify(e: Expr) -> FredholmClass:
    try:
        census = lower_to_graph(e).census()
    except NotGraphExpressible:
        census = None
    return FredholmClass.from_signature(signature(e), census)


def _census(e: Expr) -> ChainCensus:
    return lower_to_graph(e).census()


@dataclass(frozen=True)
class NormalForm3:
    """Right-invertible part, left-invertible part, finite nilpotent part."""

    t1: ChainCensus
    t2: ChainCensus
    t3: ChainCensus
    ind_t1: ExtNat
    neg_ind_t2: ExtNat
    h3_dim: int

    def reconstruct(self) -> ChainCensus:
        return self.t1 + self.t2 + self.t3

    def to_json(self):
        return {
            "T1": self.t1.to_json(),
            "T2": self.t2.to_json(),
            "T3": self.t3.to_json(),
            "ind_T1": self.ind_t1.to_json(),
            "minus_ind_T2": self.neg_ind_t2.to_json(),
            "dim_H3": self.h3_dim,
        }


@dataclass(frozen=True)
class NormalForm4:
    """Pure backward shift, invertible, pure shift, finite nilpotent."""

    t1: ChainCensus
    t2: ChainCensus
    t3: ChainCensus
    t4: ChainCensus
    ind_t1: ExtNat
    neg_ind_t3: ExtNat
    h4_dim: int

    def reconstruct(self) -> ChainCensus:
        return self.t1 + self.t2 + self.t3 + self.t4


def normal_form(e: Expr) -> NormalForm3:
    sig = signature(e)
    if not sig.semi_fredholm:
        raise NotSemiFredholm(f"{e} is not semi-Fredholm ({sig})")
    c = _census(e)
    nf = NormalForm3(
        t1=c.only("backward", "bi", "loops"),
        t2=c.only("forward"),
        t3=c.only("finite"),
        ind_t1=c.backward,
        neg_ind_t2=c.forward,
        h3_dim=int(c.finite_dim()),
    )
    # the decomposition must reproduce the multiplicities
    assert nf.ind_t1 == sig.bsmul and nf.neg_ind_t2 == sig.smul
    assert min(nf.ind_t1, nf.neg_ind_t2).is_finite
    return nf


def normal_form4(e: Expr) -> NormalForm4:
    nf = normal_form(e)
    c = nf.reconstruct()
    return NormalForm4(
        t1=c.only("backward"),
        t2=c.only("bi", "loops"),
        t3=c.only("forward"),
        t4=c.only("finite"),
        ind_t1=nf.ind_t1,
        neg_ind_t3=nf.neg_ind_t2,
        h4_dim=nf.h3_dim,
    )


@dataclass(frozen=True)
class UpperBrowderSplit:
    p: int
    h1_dim: int
    nilpotent: ChainCensus
    left_invertible: ChainCensus
    beta_t2: ExtNat


@dataclass(frozen=True)
class LowerBrowderSplit:
    p: int
    right_invertible: ChainCensus
    nilpotent: ChainCensus
    h2_dim: int
    alpha_t1: ExtNat


def decompose_upper_browder(e: Expr) -> UpperBrowderSplit:
    """Split off ``N(T^p)``, ``p = asc(T)``; the rest is left invertible."""
    sig = signature(e)
    if not sig.upper_semi_browder:
        raise NotUpperSemiBrowder(f"{e} is not upper semi-Browder ({sig})")
    c = _census(e)
    head = c.only("finite")
    tail = c.only("forward", "bi", "loops")
    split = UpperBrowderSplit(int(sig.asc), int(head.finite_dim()), head, tail, tail.forward)
    assert split.beta_t2 == sig.smul
    return split


def decompose_lower_browder(e: Expr) -> LowerBrowderSplit:
    """Split ``R(T^p)``, ``p = des(T)``, from its finite-dimensional complement."""
    sig = signature(e)
    if not sig.lower_semi_browder:
        raise NotLowerSemiBrowder(f"{e} is not lower semi-Browder ({sig})")
    c = _census(e)
    head = c.only("backward", "bi", "loops")
    tail = c.only("finite")
    split = LowerBrowderSplit(int(sig.des), head, tail, int(tail.finite_dim()), head.backward)
    assert split.alpha_t1 == sig.bsmul
    return split
