"""Explicit test polynomials and the case selector behind the upper bound.

On a normalised set (diameter 2, ``+-1`` inside) the witness is

* ``(z - 1)^n`` when ``n <= 199`` or ``w >= 3/7``,
* ``(z^2 - 1)^m`` for even ``n = 2m`` otherwise,
* ``(z - 1)(z^2 - 1)^m`` for odd ``n = 2m + 1`` otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .bounds import komarov_upper
from .geometry import ABS_TOL, ConvexSet, GeometryError, diameter, is_normalized, min_width, normalize
from .polyroot import RatioInterval, RootPoly, markov_ratio

SMALL_N_LIMIT = 199
WIDE_THRESHOLD = Fraction(3, 7)


class CaseTag(str, enum.Enum):
    SMALL_N_OR_WIDE = "SMALL_N_OR_WIDE"
    EVEN = "EVEN"
    ODD = "ODD"


@dataclass(frozen=True)
class WitnessChoice:
    case_tag: CaseTag
    m: int
    polynomial: RootPoly

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    def to_json(self) -> dict:
        return {"case_tag": self.case_tag.value, "m": self.m, "degree": self.degree,
                "polynomial": self.polynomial.to_json()}


def q_poly(n: int) -> RootPoly:
    """``(z - 1)^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return RootPoly.from_multiplicities([(1, n)])


def p_poly(m: int) -> RootPoly:
    """``(z^2 - 1)^m``."""
    if m < 1:
        raise ValueError("m must be positive")
    return RootPoly.from_multiplicities([(1, m), (-1, m)])


def big_p_poly(m: int) -> RootPoly:
    """``(z - 1)(z^2 - 1)^m``."""
    if m < 1:
        raise ValueError("m must be positive")
    return RootPoly.from_multiplicities([(1, m + 1), (-1, m)])


def witness_case(n: int, w: float) -> tuple[CaseTag, int]:
    """Case split on ``(n, w)``; ``w = 3/7`` exactly counts as wide."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= SMALL_N_LIMIT or Fraction(w) >= WIDE_THRESHOLD:
        return CaseTag.SMALL_N_OR_WIDE, 0
    if n % 2 == 0:
        return CaseTag.EVEN, n // 2
    return CaseTag.ODD, (n - 1) // 2


def witness_for(n: int, K1: ConvexSet, tol: float = ABS_TOL) -> WitnessChoice:
    """Witness polynomial for degree ``n`` on the normalised set ``K1``."""
    if not is_normalized(K1, tol):
        raise GeometryError("witness_for needs a normalised set (diameter 2, +-1 inside)")
    tag, m = witness_case(n, min_width(K1))
    if tag is CaseTag.SMALL_N_OR_WIDE:
        return WitnessChoice(tag, 0, q_poly(n))
    if tag is CaseTag.EVEN:
        return WitnessChoice(tag, m, p_poly(m))
    return WitnessChoice(tag, m, big_p_poly(m))


def normalized_bound(n: int, w: float) -> float:
    """``7 max{w n, 2 sqrt(n)}``: the upper bound with constant 28 at diameter 2."""
    return 7.0 * max(w * n, 2.0 * n ** 0.5)


@dataclass(frozen=True)
class WitnessCertificate:
    """Certified ratio of the witness for ``K``, pulled back from the normalised frame."""

    n: int
    choice: WitnessChoice
    lower: float
    upper: float
    bound: float
    normalized: RatioInterval

    @property
    def margin(self) -> float:
        return self.bound - self.upper

    @property
    def holds(self) -> bool:
        return self.upper <= self.bound

    def to_json(self) -> dict:
        return {"n": self.n, "case_tag": self.choice.case_tag.value, "m": self.choice.m,
                "ratio_lower": self.lower, "ratio_upper": self.upper, "bound": self.bound,
                "margin": self.margin, "holds": self.holds}


def certify_witness(K: ConvexSet, n: int, rel_tol: float = 1e-6) -> WitnessCertificate:
    """Certify the witness ratio on ``normalize(K)`` and scale it back to ``K``.

    If ``t(z) = alpha z + beta`` maps K onto the normalised set, ratios on K are
    ``|alpha|`` times ratios on ``t(K)``.
    """
    K1, t = normalize(K)
    choice = witness_for(n, K1)
    r = markov_ratio(choice.polynomial, K1, rel_tol)
    s = t.scale
    bound = komarov_upper(diameter(K), min_width(K), n)
    return WitnessCertificate(n, choice, r.lower * s, r.upper * s, bound, r)
