"""Eventually-affine growth sequences k -> dim N(T^k), k -> dim K/R(T^k).

A sequence is stored by its increments: ``steps[k-1]`` is the jump from
``s(k-1)`` to ``s(k)`` for ``k <= k0`` and ``tail`` is the jump for every
``k > k0``. Increments of kernel/cokernel chains are nonincreasing, so the
stabilisation index (ascent/descent) is recoverable exactly even when the
values themselves are already infinite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import INF, ExtNat, ext

__all__ = ["GrowthSeq", "growth_slope", "growth_combine"]


@dataclass(frozen=True)
class GrowthSeq:
    steps: tuple = ()
    tail: ExtNat = ExtNat(0)

    def __post_init__(self):
        steps = tuple(ext(s) for s in self.steps)
        tail = ext(self.tail)
        # canonical: no trailing steps equal to the tail
        while steps and steps[-1] == tail:
            steps = steps[:-1]
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "tail", tail)

    @classmethod
    def zero(cls) -> "GrowthSeq":
        return cls()

    @classmethod
    def linear(cls, slope=1) -> "GrowthSeq":
        return cls((), slope)

    @classmethod
    def capped(cls, n: int, mult=1) -> "GrowthSeq":
        """``k -> mult * min(k, n)``."""
        return cls((ext(mult),) * n, 0)

    @property
    def k0(self) -> int:
        return len(self.steps)

    def step(self, k: int) -> ExtNat:
        if k < 1:
            raise ValueError("steps start at k = 1")
        return self.steps[k - 1] if k <= self.k0 else self.tail

    def __call__(self, k: int) -> ExtNat:
        if k < 0:
            raise ValueError("k must be nonnegative")
        total = ExtNat(0)
        for s in self.steps[:k]:
            total = total + s
        if k > self.k0:
            total = total + self.tail * (k - self.k0)
        return total

    # the (prefix, slope, intercept) view of the same data
    @property
    def prefix(self) -> tuple:
        return tuple(self(k) for k in range(1, self.k0 + 1))

    @property
    def slope(self) -> ExtNat:
        return self.tail

    @property
    def intercept(self) -> ExtNat:
        base = self(self.k0)
        if base.is_inf or self.tail.is_inf:
            return INF
        # steps never drop below the tail, so this is nonnegative
        return ExtNat(int(base) - int(self.tail) * self.k0)

    def stabilization(self) -> ExtNat:
        """Smallest k >= 0 after which the sequence never grows again."""
        if self.tail:
            return INF
        for k in range(self.k0, 0, -1):
            if self.steps[k - 1]:
                return ExtNat(k)
        return ExtNat(0)

    def __add__(self, other: "GrowthSeq") -> "GrowthSeq":
        return growth_combine(self, other, "add")

    def amplify(self) -> "GrowthSeq":
        return growth_combine(self, None, "amplify")

    def __str__(self) -> str:
        shown = ", ".join(str(self(k)) for k in range(1, max(self.k0, 1) + 3))
        return f"[{shown}, ...; +{self.tail}/step]"


def growth_slope(s: GrowthSeq) -> ExtNat:
    """lim s(k)/k; infinite as soon as any tail value is infinite."""
    if s(s.k0 + 1).is_inf:
        return INF
    return s.tail


def growth_combine(a: GrowthSeq, b, op: str) -> GrowthSeq:
    if op == "add":
        n = max(a.k0, b.k0)
        steps = [a.step(k) + b.step(k) for k in range(1, n + 1)]
        return GrowthSeq(tuple(steps), a.tail + b.tail)
    if op == "amplify":
        return GrowthSeq(tuple(s * INF for s in a.steps), a.tail * INF)
    raise ValueError(f"unknown op {op!r}")
