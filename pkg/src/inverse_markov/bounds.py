"""Closed-form bounds on the inverse Markov factor ``M_n(K)``.

Units are inverse length throughout; ``d`` is the diameter, ``w`` the minimal
width.  Bounds that need ``w > 0`` carry an applicability flag rather than a
degenerate value.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .geometry import ConvexSet, GeometryError, diameter, min_width

LP_CONSTANT = 20.0          # sqrt(n) / (20 d)
REVESZ_LOWER = 0.0003
REVESZ_UPPER = 600.0
C1 = 0.0003
C2 = 28.0
SHARPNESS_FACTOR = 560.0    # 20 * 28
IMPROVED_K2 = 459           # 28 * sqrt(459) < 600


def n0(d: float, w: float) -> float:
    """``max{1, 2 (d/16w)^2 log(d/16w)}`` with the natural logarithm."""
    if w <= 0:
        return math.inf
    q = d / (16.0 * w)
    return max(1.0, 2.0 * q * q * math.log(q))


def two_term(d: float, w: float, n: int) -> tuple[float, float]:
    """``(w n / d^2, sqrt(n) / d)``."""
    return w * n / (d * d), math.sqrt(n) / d


def komarov_upper(d: float, w: float, n: int) -> float:
    return C2 * max(two_term(d, w, n))


def komarov_lower(d: float, w: float, n: int) -> float:
    return C1 * max(two_term(d, w, n))


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: float
    w: float
    relative_width: float
    lp_lower: float
    revesz_lower: float | None
    revesz_upper: float | None
    revesz_n0: float | None
    revesz_upper_applicable: bool
    komarov_lower: float
    komarov_upper: float
    alt_lower: float
    alt_upper: float
    corollary1_threshold: float | None
    corollary1_active: bool
    corollary1_upper: float | None
    improved_threshold: float | None
    sharpness_threshold: float | None
    corollary2_flag: bool
    exponent_class: float
    log_base: str = "e"

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def csv_fields() -> list[str]:
        return list(BoundReport.__dataclass_fields__)


def bound_values(d: float, w: float, n: int) -> BoundReport:
    """Every bound for diameter ``d``, width ``w`` and degree ``n``."""
    if not d > 0:
        raise GeometryError("diameter must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    a, b = two_term(d, w, n)
    wide = w > 0
    nz = n0(d, w) if wide else None
    c1_thr = d * d / (w * w) if wide else None
    c1_active = wide and n > c1_thr
    return BoundReport(
        n=n, d=d, w=w, relative_width=w / d,
        lp_lower=math.sqrt(n) / (LP_CONSTANT * d),
        revesz_lower=REVESZ_LOWER * a if wide else None,
        revesz_upper=REVESZ_UPPER * a if wide else None,
        revesz_n0=nz,
        revesz_upper_applicable=bool(wide and n > nz),
        komarov_lower=C1 * max(a, b),
        komarov_upper=C2 * max(a, b),
        alt_lower=C1 / 2 * (a + b),
        alt_upper=C2 * (a + b),
        corollary1_threshold=c1_thr,
        corollary1_active=bool(c1_active),
        corollary1_upper=C2 * a if c1_active else None,
        improved_threshold=d * d / (IMPROVED_K2 * w * w) if wide else None,
        sharpness_threshold=(d / (SHARPNESS_FACTOR * w)) ** 2 if wide else None,
        corollary2_flag=bool(w <= d / math.sqrt(n)),
        exponent_class=exponent_class(w / d, n),
    )


def bound_report(K: ConvexSet, n: int) -> BoundReport:
    return bound_values(diameter(K), min_width(K), n)


@dataclass(frozen=True)
class SharpnessReport:
    in_regime: bool
    at_threshold: bool
    upper_28: float
    lp_lower: float
    strict_holds: bool | None


def sharpness_check(d: float, w: float, n: int) -> SharpnessReport:
    """Below ``n < d^2 / (560 w)^2`` the bound ``28 w n / d^2`` falls under ``sqrt(n) / (20 d)``.

    ``strict_holds`` reports the strict inequality inside the regime and is
    ``None`` outside it.  The two sides coincide exactly at the threshold.
    """
    if not w > 0:
        raise ValueError("w must be positive")
    thr = (d / (SHARPNESS_FACTOR * w)) ** 2
    up = C2 * w * n / (d * d)
    lp = math.sqrt(n) / (LP_CONSTANT * d)
    in_regime = n < thr
    # exact comparison: 28 w n / d^2 < sqrt(n)/(20 d)  <=>  560 w sqrt(n) < d
    at = math.isclose(n, thr, rel_tol=1e-12)
    strict = (up < lp) if in_regime and not at else None
    return SharpnessReport(in_regime and not at, at, up, lp, strict)


def exponent_class(s: float, n: int) -> float:
    """Exponent ``gamma`` with ``max{s n, sqrt(n)} = n^gamma``, clamped to ``[1/2, 1]``."""
    if not 0 <= s <= 1:
        raise ValueError("relative width must lie in [0, 1]")
    if n <= 1 or s <= n ** -0.5:
        return 0.5
    return min(1.0, max(0.5, 1.0 + math.log(s) / math.log(n)))


def diamond_width(eps: float) -> float:
    """Minimal width ``2 eps / sqrt(1 + eps^2)`` of the diamond with diagonals ``[-1, 1]``, ``[-i eps, i eps]``."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    return 2.0 * eps / math.sqrt(1.0 + eps * eps)


TURAN_INTERVAL_LOWER = "M_n(I) > sqrt(n)/6"
TURAN_INTERVAL_UPPER = "M_n(I) <= sqrt(n/e) + o(1)"
