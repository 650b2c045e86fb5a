"""Outward-rounded interval arithmetic on numpy arrays.

Each endpoint is pushed one ulp outward after every correctly rounded
operation (``+ - * /`` and ``sqrt``) and two ulps after ``exp`` and ``log``,
whose libm implementations are accurate to within one ulp but not correctly
rounded.  Endpoints may be numpy arrays, which makes a whole level of a
branch-and-bound tree a single ``Interval``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_INF = np.inf


def _down(x, k: int = 1):
    for _ in range(k):
        x = np.nextafter(x, -_INF)
    return x


def _up(x, k: int = 1):
    for _ in range(k):
        x = np.nextafter(x, _INF)
    return x


class Interval:
    """Closed interval ``[lo, hi]`` (elementwise when the endpoints are arrays)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = np.asarray(lo, dtype=float)
        hi = lo if hi is None else np.asarray(hi, dtype=float)
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)) or np.any(lo > hi):
            raise ValueError("invalid interval endpoints")
        self.lo, self.hi = np.broadcast_arrays(lo, hi)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Interval":
        """Tight enclosure of a rational number."""
        x = float(q)
        lo = x if Fraction(x) <= q else float(_down(x))
        hi = x if Fraction(x) >= q else float(_up(x))
        return cls(lo, hi)

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, Fraction):
            return Interval.from_fraction(x)
        if isinstance(x, int) and abs(x) < 2 ** 53:
            return Interval(float(x))
        if isinstance(x, (float, np.floating)):
            # a float literal is taken as the exact binary value it denotes
            return Interval(float(x))
        if isinstance(x, int):
            return Interval.from_fraction(Fraction(x))
        raise TypeError(f"cannot make an interval from {type(x).__name__}")

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    @property
    def shape(self):
        return self.lo.shape

    @property
    def mid(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self):
        return self.hi - self.lo

    def __getitem__(self, idx) -> "Interval":
        return Interval(self.lo[idx], self.hi[idx])

    def contains(self, x) -> np.ndarray:
        return (self.lo <= x) & (x <= self.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        o = Interval._coerce(other)
        lo = _down(self.lo + o.lo)
        lo = np.where((self.lo >= 0) & (o.lo >= 0), np.maximum(lo, 0.0), lo)
        return Interval(lo, _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other) -> "Interval":
        return Interval._coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = Interval._coerce(other)
        with np.errstate(invalid="ignore"):
            p = np.stack(np.broadcast_arrays(self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi))
        # 0 * inf only arises from a zero endpoint against an unbounded one
        p = np.where(np.isnan(p), 0.0, p)
        lo = _down(p.min(axis=0))
        # a product of nonnegative factors is nonnegative; do not round past 0
        lo = np.where((self.lo >= 0) & (o.lo >= 0), np.maximum(lo, 0.0), lo)
        return Interval(lo, _up(p.max(axis=0)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = Interval._coerce(other)
        if np.any((o.lo <= 0) & (o.hi >= 0)):
            raise ZeroDivisionError("interval division by an interval containing 0")
        p = np.stack(np.broadcast_arrays(self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi))
        lo = _down(p.min(axis=0))
        lo = np.where((self.lo >= 0) & (o.lo > 0), np.maximum(lo, 0.0), lo)
        return Interval(lo, _up(p.max(axis=0)))

    def __rtruediv__(self, other) -> "Interval":
        return Interval._coerce(other) / self

    def sqr(self) -> "Interval":
        """``x^2`` without the dependency blow-up of ``x * x``."""
        a, b = np.abs(self.lo), np.abs(self.hi)
        hi = _up(np.maximum(a, b) ** 2)
        lo = np.where((self.lo <= 0) & (self.hi >= 0), 0.0, _down(np.minimum(a, b) ** 2))
        return Interval(lo, hi)

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only nonnegative integer powers")
        if k == 0:
            return Interval(np.ones_like(self.lo))
        if k == 2:
            return self.sqr()
        result = None
        base = self
        e = int(k)
        # square-and-multiply; squares go through sqr() so even powers stay >= 0
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base.sqr()
        return result

    def sqrt(self) -> "Interval":
        if np.any(self.lo < 0):
            raise ValueError("sqrt of an interval with negative part")
        return Interval(np.maximum(_down(np.sqrt(self.lo)), 0.0), _up(np.sqrt(self.hi)))

    def log(self) -> "Interval":
        if np.any(self.lo < 0):
            raise ValueError("log of an interval with negative part")
        with np.errstate(divide="ignore"):
            lo = np.where(self.lo == 0, -_INF, _down(np.log(self.lo), 2))
            hi = np.where(self.hi == 0, -_INF, _up(np.log(self.hi), 2))
        return Interval(lo, hi)

    def exp(self) -> "Interval":
        with np.errstate(over="ignore"):
            lo = np.maximum(_down(np.exp(self.lo), 2), 0.0)
            hi = _up(np.exp(self.hi), 2)
        return Interval(lo, hi)

    def pow_nonneg(self, k: int) -> "Interval":
        """``x^k`` for ``x >= 0`` via ``exp(k log x)``; suited to large ``k``."""
        if np.any(self.lo < 0):
            raise ValueError("pow_nonneg needs a nonnegative interval")
        if k == 0:
            return Interval(np.ones_like(self.lo))
        lg = self.log()
        with np.errstate(invalid="ignore"):
            e = Interval(np.where(np.isinf(lg.lo), -_INF, _down(k * lg.lo)),
                         np.where(np.isinf(lg.hi), -_INF, _up(k * lg.hi)))
        return e.exp()

    def hull(self, other: "Interval") -> "Interval":
        return Interval(np.minimum(self.lo, other.lo), np.maximum(self.hi, other.hi))

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    # certain comparisons: true only when every pair of members compares so
    def certainly_le(self, other) -> np.ndarray:
        return self.hi <= Interval._coerce(other).lo

    def certainly_lt(self, other) -> np.ndarray:
        return self.hi < Interval._coerce(other).lo

    def certainly_ge(self, other) -> np.ndarray:
        return self.lo >= Interval._coerce(other).hi

    def certainly_gt(self, other) -> np.ndarray:
        return self.lo > Interval._coerce(other).hi


def imax(a: Interval, b: Interval) -> Interval:
    return Interval(np.maximum(a.lo, b.lo), np.maximum(a.hi, b.hi))


def isqrt_const(x: int | Fraction) -> Interval:
    return Interval._coerce(x).sqrt()
