"""Exact scalar domains: extended naturals and Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "ExtNat",
    "INF",
    "ext",
    "ext_arith",
    "ext_diff",
    "GaussianRational",
    "gq",
    "dense_rank",
    "matmul",
]


@total_ordering
class ExtNat:
    """A value in {0, 1, 2, ..., ∞}.

    Arithmetic follows the cardinal conventions: ``a + ∞ = ∞``,
    ``a * ∞ = ∞`` for ``a != 0`` and ``0 * ∞ = 0``. Subtraction is partial.
    """

    __slots__ = ("_v",)

    def __init__(self, value: Union[int, "ExtNat", None] = 0):
        if isinstance(value, ExtNat):
            value = value._v
        elif isinstance(value, str):
            value = None if value.strip() in ("inf", "∞", "oo") else int(value)
        if value is not None:
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"ExtNat needs an int, got {value!r}")
            if value < 0:
                raise ValueError(f"ExtNat must be nonnegative, got {value}")
        object.__setattr__(self, "_v", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtNat is immutable")

    @property
    def is_inf(self) -> bool:
        return self._v is None

    @property
    def is_finite(self) -> bool:
        return self._v is not None

    def __int__(self) -> int:
        if self._v is None:
            raise OverflowError("cannot convert ∞ to int")
        return self._v

    def __index__(self) -> int:
        return int(self)

    def __bool__(self) -> bool:
        return self._v != 0

    def __hash__(self) -> int:
        return hash(("ExtNat", self._v))

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._v is None:
            return False
        if other._v is None:
            return True
        return self._v < other._v

    def compare(self, other) -> int:
        other = _coerce(other)
        return 0 if self == other else (-1 if self < other else 1)

    def __add__(self, other) -> "ExtNat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._v is None or other._v is None:
            return INF
        return ExtNat(self._v + other._v)

    __radd__ = __add__

    def __mul__(self, other) -> "ExtNat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._v == 0 or other._v == 0:
            return ZERO
        if self._v is None or other._v is None:
            return INF
        return ExtNat(self._v * other._v)

    __rmul__ = __mul__

    def __sub__(self, other) -> "ExtNat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._v is None:
            raise ValueError(f"{self} - ∞ is undefined")
        if self._v is None:
            return INF
        if self._v < other._v:
            raise ValueError(f"{self} - {other} is negative")
        return ExtNat(self._v - other._v)

    def __rsub__(self, other) -> "ExtNat":
        return _coerce(other) - self

    def __repr__(self) -> str:
        return "ExtNat(∞)" if self._v is None else f"ExtNat({self._v})"

    def __str__(self) -> str:
        return "∞" if self._v is None else str(self._v)

    def to_json(self):
        return "inf" if self._v is None else self._v


def _coerce(x):
    if isinstance(x, ExtNat):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return ExtNat(x)
    return NotImplemented


ZERO = ExtNat(0)
INF = ExtNat(None)


def ext(x) -> ExtNat:
    """Coerce an int, ``"inf"`` or ExtNat to ExtNat."""
    return x if isinstance(x, ExtNat) else ExtNat(x)


def ext_arith(a, b, op: str):
    a, b = ext(a), ext(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "cmp":
        return ("less", "equal", "greater")[a.compare(b) + 1]
    raise ValueError(f"unknown op {op!r}")


def ext_diff(a, b):
    """Signed difference of two ExtNats as an int or ``"+inf"``/``"-inf"``.

    Raises ValueError for ∞ - ∞.
    """
    a, b = ext(a), ext(b)
    if a.is_inf and b.is_inf:
        raise ValueError("∞ - ∞ is undefined")
    if a.is_inf:
        return "+inf"
    if b.is_inf:
        return "-inf"
    return int(a) - int(b)


class GaussianRational:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty scalar")
        try:
            if not s.endswith("i"):
                return cls(Fraction(s))
            body = s[:-1]
            cut = max(body.rfind("+"), body.rfind("-"))
            real, imag = (body[:cut], body[cut:]) if cut > 0 else ("", body)
            if imag in ("", "+"):
                imag = "1"
            elif imag == "-":
                imag = "-1"
            return cls(Fraction(real) if real else 0, Fraction(imag))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a Gaussian rational: {text!r}") from None

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = _gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _gq(other) - self

    def __mul__(self, other):
        other = _gq(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _gq(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _gq(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _gq(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = self.im
        mag = abs(im)
        im_s = "" if mag == 1 else str(mag)
        if self.re == 0:
            return f"{'-' if im < 0 else ''}{im_s}i"
        return f"{self.re}{'-' if im < 0 else '+'}{im_s}i"

    def to_json(self):
        return [
            [self.re.numerator, self.re.denominator],
            [self.im.numerator, self.im.denominator],
        ]


def _gq(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    return NotImplemented


ONE = GaussianRational(1)


def gq(x) -> GaussianRational:
    """Coerce an int, Fraction, string or GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, tuple):
        return GaussianRational(*x)
    return GaussianRational(x)


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    zero = GaussianRational()
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = zero
            for t in range(m):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def dense_rank(rows) -> int:
    """Rank of a small dense matrix over Q(i) by plain row reduction."""
    work = [list(r) for r in rows]
    rank, ncols = 0, len(work[0]) if work else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = work[rank][col].inverse()
        for r in range(rank + 1, len(work)):
            if work[r][col]:
                f = work[r][col] * inv
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank
