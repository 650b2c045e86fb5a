"""Verification of each inequality in the upper-bound argument.

Two kinds of evidence are produced:

* ``interval`` / ``exact``: statements in the scalar parameters ``(t, w, m)``
  certified over whole boxes by outward-rounded interval arithmetic, or by
  exact rational arithmetic for constants and polynomial identities;
* ``sampled``: statements about the polynomials on a concrete set, checked at
  sample points using certified norms.  These hold at the points tested and
  nowhere else.

Every check yields a :class:`CheckRecord`; :class:`ProofReport` collects them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constructions import WIDE_THRESHOLD, big_p_poly, p_poly
from .geometry import (
    ConvexSet,
    Diamond,
    Ellipse,
    GeometryError,
    Segment,
    contains,
    is_normalized,
    min_width,
    sample_boundary,
    sample_interior,
)
from .interval import Interval, imax
from .polyroot import log_abs, log_abs_derivative, sup_norm

SQRT3 = math.sqrt(3.0)
ALPHA0 = 2.0 + 1.0 / (28.0 * SQRT3)
W_MAX = 3.0 / 7.0 - 1e-9
_LOG_SLACK = 1e-9


class PreconditionError(ValueError):
    """A check was requested outside the parameter range it applies to."""


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    params: dict
    status: str
    margin: float
    method: str

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"check_id": self.check_id, "params": self.params, "status": self.status,
                "margin": self.margin, "method": self.method}


@dataclass
class ProofReport:
    entries: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[CheckRecord]:
        return [e for e in self.entries if not e.passed]

    def sorted(self) -> "ProofReport":
        return ProofReport(sorted(self.entries, key=lambda e: e.check_id))

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def _record(check_id: str, params: dict, ok: bool, margin: float, method: str) -> CheckRecord:
    return CheckRecord(check_id, params, "pass" if ok else "fail", float(margin), method)


def _box(w) -> Interval:
    if isinstance(w, Interval):
        return w
    if isinstance(w, tuple):
        return Interval(*w)
    return Interval(w)


def _box_params(w: Interval, m: int) -> dict:
    return {"w": [float(w.lo), float(w.hi)], "m": m}


# ---------------------------------------------------------------------------
# the scalar functions


def h_func(t: Interval, w: Interval) -> Interval:
    """``(1 + w^2 - t)^2 + 4 w^2 t``."""
    w2 = w.sqr()
    return (1 + w2 - t).sqr() + 4 * w2 * t


def g_funcs(t: Interval, w: Interval, m: int) -> tuple[Interval, Interval]:
    """``g = (t + w^2) h^(m-1)`` and its majorant ``g1 = (t + w^2)(1 + 2w^2 - t)^(m-1)``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    w2 = w.sqr()
    base = 1 + 2 * w2 - t
    base = Interval(np.maximum(base.lo, 0.0), np.maximum(base.hi, 0.0)) if np.all(base.hi >= 0) else base
    g = (t + w2) * h_func(t, w).pow_nonneg(m - 1)
    g1 = (t + w2) * base.pow_nonneg(m - 1)
    return g, g1


def t_star(m: int, w: float) -> tuple[float, bool]:
    """``t* = (1 - (m-3) w^2) / m`` and whether ``t* > 2 w^2`` (interior maximum of ``g1``)."""
    if m < 100:
        raise PreconditionError("t_star is used for m >= 100")
    ts = (1.0 - (m - 3) * w * w) / m
    return ts, ts > 2 * w * w


def f_func(x, y, m: int):
    """``|z (z^2 - 1)^(m-1)|`` at ``z = x + iy`` (vectorised)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    inner = np.sqrt((1 + y * y - x * x) ** 2 + 4 * x * x * y * y)
    return np.sqrt(x * x + y * y) * inner ** (m - 1)


def _t_star_box(w: Interval, m: int) -> Interval:
    return (1 - (m - 3) * w.sqr()) / m


def _check_box(w: Interval, m: int):
    if m < 100:
        raise PreconditionError("m must be at least 100")
    if not (w.lo >= 0 and w.hi < 3.0 / 7.0):
        raise PreconditionError("w box must lie in [0, 3/7)")
    # [2w^2, 1 - w] is a genuine interval throughout w < 3/7
    if not (2 * w.sqr()).certainly_le(1 - w):
        raise PreconditionError("degenerate t-range [2w^2, 1-w]")


# ---------------------------------------------------------------------------
# subcase 1: 1 - w <= t <= 1


_C_SUB1 = Fraction(253, 100)


def verify_subcase1(w_box, m: int) -> CheckRecord:
    """Certify ``g(t) <= 3 w^2`` on ``1 - w <= t <= 1`` for every ``w`` in the box.

    Mirrors the chain: ``h(1) <= h(1-w) <= 5 w^2 < 1`` (so ``h <= 5w^2`` by
    convexity), ``h^(m-1) <= h^9 <= 5 w^2 (45/49)^8 <= 2.53 w^2`` and
    ``(1 + 9/49) 2.53 <= 3``.  The conclusion is also enclosed directly with
    ``t = 1 - s w``, ``h = w^2 ((s - w)^2 + 4)``.
    """
    w = _box(w_box)
    _check_box(w, m)
    w2 = w.sqr()
    margins = {}
    # h(1-w) - h(1) = w^2 (1 - 2w)
    margins["h1_le_h1mw"] = float((w2 * (1 - 2 * w)).lo)
    # 5w^2 - h(1-w) = w^3 (2 - w)
    margins["h1mw_le_5w2"] = float((w ** 3 * (2 - w)).lo)
    margins["5w2_lt_1"] = float(1 - (5 * w2).hi)
    margins["w2_le_9_49"] = float((Interval.from_fraction(Fraction(9, 49)) - w2).lo)
    margins["exponent_drop"] = float(m - 1 - 9)
    # w-independent constants, exact
    c1 = 5 * Fraction(45, 49) ** 8
    margins["5_45_49_pow8_le_2.53"] = float(_C_SUB1 - c1)
    margins["58_49_times_2.53_le_3"] = float(3 - Fraction(58, 49) * _C_SUB1)
    # direct enclosure of g / w^2 over s in [0, 1] (split for tightness)
    s = Interval(np.linspace(0, 1, 33)[:-1], np.linspace(0, 1, 33)[1:])
    H = (s - w).sqr() + 4
    gw = (1 - s * w + w2) * H * (w2 * H).pow_nonneg(m - 2)
    margins["direct_g_over_w2_le_3"] = float(3 - np.max(gw.hi))
    ok = all(v >= 0 for v in margins.values()) and margins["5w2_lt_1"] > 0
    params = _box_params(w, m) | {"t": "[1-w, 1]", "margins": margins}
    return _record("subcase1", params, ok, min(margins.values()), "interval")


# ---------------------------------------------------------------------------
# subcase 2: 2 w^2 <= t <= 1 - w


def _subcase2_branches(w: Interval, m: int):
    """Which shapes of ``g1`` occur over the box, with the margin each needs.

    Monotone (``t* <= 2w^2``): ``g1 <= g1(2w^2) = 3w^2``, nothing to check.
    Interior (``t* > 2w^2``): ``0 <= 1 + 2w^2 - t* < 1`` (the upper bound is the
    branch condition itself) so ``g1 <= t* + w^2 = (1 + 3w^2)/m < 2/m``.
    """
    ts = _t_star_box(w, m)
    w2 = w.sqr()
    out = []
    if not np.all(ts.certainly_gt(2 * w2)):
        out.append(("monotone", 0.0))
    if not np.all(ts.certainly_le(2 * w2)):
        inner = 1 + 2 * w2 - ts
        out.append(("interior", min(float(inner.lo), float((Interval(2.0) - (1 + 3 * w2)).lo))))
    return out


def verify_subcase2(w_box, m: int) -> CheckRecord:
    """Certify ``h(t) <= 1 + 2w^2 - t`` and ``g(t) <= max{3w^2, 2/m}`` on ``[2w^2, 1-w]``.

    The first inequality follows from convexity of ``h(t) + t`` and its values
    at the two ends; the second from the monotone or interior-maximum shape of
    ``g1`` depending on the sign of ``t* - 2 w^2``.
    """
    w = _box(w_box)
    _check_box(w, m)
    w2 = w.sqr()
    margins = {}
    # h(2w^2) + 2w^2 = 1 + 9 w^4 <= 1 + 2 w^2  <=>  w^2 (2 - 9 w^2) >= 0
    margins["left_end"] = float((w2 * (2 - 9 * w2)).lo)
    # h(1-w) + 1 - w = 1 + 2w^2 - w((1-w)^3 - w^2)
    margins["right_end"] = float((w * ((1 - w) ** 3 - w2)).lo)
    ts = _t_star_box(w, m)
    margins["t_star_le_1_over_m"] = float(((m - 3) * w2 / m).lo)
    margins["t_star_lt_1_minus_w"] = float(((1 - w) - ts).lo)
    branches = _subcase2_branches(w, m)
    margins["branches"] = min(b[1] for b in branches)
    kinds = sorted(b[0] for b in branches)
    ok = all(v >= 0 for v in margins.values()) and margins["t_star_lt_1_minus_w"] > 0
    params = _box_params(w, m) | {"t": "[2w^2, 1-w]", "branches": kinds, "margins": margins}
    return _record("subcase2", params, ok, min(margins.values()), "interval")


def certify_g_bound(w_box, m: int, max_boxes: int = 200_000) -> CheckRecord:
    """Direct enclosure of ``g(t) <= max{3 w^2, 2/m}`` over ``t in [2w^2, 1]``.

    ``t = 2w^2 + s (1 - 2w^2)`` with ``s`` bisected adaptively; ``w`` boxes
    are split too when a box does not resolve.
    """
    w0 = _box(w_box)
    _check_box(w0, m)
    s = Interval(np.array([0.0]), np.array([1.0]))
    wl, wh = np.array([float(w0.lo)]), np.array([float(w0.hi)])
    processed = 0
    worst = math.inf
    while len(s.lo):
        processed += len(s.lo)
        if processed > max_boxes:
            return _record("g_bound_direct", _box_params(w0, m) | {"boxes": processed}, False, -math.inf, "interval")
        w = Interval(wl, wh)
        w2 = w.sqr()
        one_m2w2 = 1 - 2 * w2
        base = (1 - s) * one_m2w2 + w2            # 1 + w^2 - t
        t = 2 * w2 + s * one_m2w2
        h = base.sqr() + 4 * w2 * t
        g = (t + w2) * h.pow_nonneg(m - 1)
        bound = imax(3 * w2, Interval(2.0) / m)
        slack = bound.lo - g.hi
        ok = slack >= 0
        if ok.any():
            worst = min(worst, float(np.min(slack[ok])))
        bad = ~ok
        if not bad.any():
            break
        sl, sh, wl, wh = s.lo[bad], s.hi[bad], wl[bad], wh[bad]
        sm = 0.5 * (sl + sh)
        split_w = (wh - wl) > (sh - sl)
        wm = 0.5 * (wl + wh)
        # split w where it is the wider side, s elsewhere
        nsl = np.concatenate([np.where(split_w, sl, sl), np.where(split_w, sl, sm)])
        nsh = np.concatenate([np.where(split_w, sh, sm), np.where(split_w, sh, sh)])
        nwl = np.concatenate([np.where(split_w, wl, wl), np.where(split_w, wm, wl)])
        nwh = np.concatenate([np.where(split_w, wm, wh), np.where(split_w, wh, wh)])
        s = Interval(nsl, nsh)
        wl, wh = nwl, nwh
    return _record("g_bound_direct", _box_params(w0, m) | {"boxes": processed}, True, worst, "interval")


def _overlap(a: Interval, b: Interval) -> bool:
    return bool(np.all(a.lo <= b.hi) and np.all(b.lo <= a.hi))


def verify_summary(w_box, m: int) -> CheckRecord:
    """``g <= max{3w^2, 2/m}`` gives ``f* <= max{sqrt3 w, sqrt(2/m)}`` and
    ``R <= 2m f* = max{sqrt3 2mw, 2 sqrt(2m)} <= sqrt3 max{wn, 2 sqrt n}``.

    Each step is a branchwise identity or a monotone comparison, checked per
    branch so that no ``w`` dependency is lost to interval widening.
    """
    w = _box(w_box)
    _check_box(w, m)
    s3 = Interval(3.0).sqrt()
    two_m = Interval(2.0 * m)
    steps = {
        "sqrt3_squared": _overlap(s3.sqr(), Interval(3.0)),
        "sqrt(2/m)_squared": _overlap((Interval(2.0) / m).sqrt().sqr(), Interval(2.0) / m),
        "2m_sqrt(2/m)=2sqrt(2m)": _overlap(two_m * (Interval(2.0) / m).sqrt(), 2 * two_m.sqrt()),
        "n=2m": True,
    }
    # 2 sqrt(2m) <= sqrt3 * 2 sqrt(2m), and the w-branch is an exact identity
    margin = float((s3 * 2 * two_m.sqrt() - 2 * two_m.sqrt()).lo)
    ok = all(steps.values()) and margin > 0
    return _record("summary_1a", _box_params(w, m) | {"steps": steps}, ok, margin, "interval")


# ---------------------------------------------------------------------------
# exact identities and constants


def _h_exact(t: Fraction, w: Fraction) -> Fraction:
    return (1 + w * w - t) ** 2 + 4 * w * w * t


_IDENTITY_POINTS = [Fraction(k, 17) for k in range(0, 8)]


def verify_identities() -> list[CheckRecord]:
    """Polynomial identities in ``w`` (degree <= 4), checked in exact arithmetic at
    eight distinct rationals; agreement at more points than the degree proves them."""
    recs = []
    cases = {
        "h(1)=4w^2+w^4": lambda w: _h_exact(Fraction(1), w) - (4 * w ** 2 + w ** 4),
        "h(1-w)=5w^2-2w^3+w^4": lambda w: _h_exact(1 - w, w) - (5 * w ** 2 - 2 * w ** 3 + w ** 4),
        "h(2w^2)+2w^2=1+9w^4": lambda w: _h_exact(2 * w * w, w) + 2 * w * w - (1 + 9 * w ** 4),
        "h(1-w)+1-w=1+2w^2-w((1-w)^3-w^2)":
            lambda w: _h_exact(1 - w, w) + 1 - w - (1 + 2 * w * w - w * ((1 - w) ** 3 - w * w)),
    }
    for name, fn in cases.items():
        bad = [float(w) for w in _IDENTITY_POINTS if fn(w) != 0]
        recs.append(_record(f"identity:{name}", {"points": len(_IDENTITY_POINTS)}, not bad, 0.0, "exact"))
    # g1'(t) = (1+2w^2-t)^(m-2) [(1+2w^2-t) - (m-1)(t+w^2)] and the bracket equals m (t* - t):
    # linear in t, quadratic in w; check on a 3 x 4 rational grid for several m
    bad = 0
    for m in (100, 200, 1000):
        for w in _IDENTITY_POINTS[:4]:
            ts = (1 - (m - 3) * w * w) / m
            for t in (Fraction(0), Fraction(1, 3), Fraction(1)):
                lhs = (1 + 2 * w * w - t) - (m - 1) * (t + w * w)
                if lhs != m * (ts - t):
                    bad += 1
            if ts + w * w != (1 + 3 * w * w) / m:
                bad += 1
            # g1(2w^2) = 3w^2 * 1^(m-1)
            if (2 * w * w + w * w) * (1 + 2 * w * w - 2 * w * w) ** (m - 1) != 3 * w * w:
                bad += 1
    recs.append(_record("identity:g1_derivative_and_t_star", {"m": [100, 200, 1000]}, bad == 0, 0.0, "exact"))
    # t* > 2w^2  <=>  m - 1 < 1/(3w^2), exact at many rationals
    bad = 0
    for m in range(100, 1001, 50):
        for k in range(1, 60):
            w = Fraction(k, 140)
            ts = (1 - (m - 3) * w * w) / m
            if (ts > 2 * w * w) != (m - 1 < 1 / (3 * w * w)):
                bad += 1
    recs.append(_record("identity:t_star_branch_equivalence", {"m": "100..1000 step 50"}, bad == 0, 0.0, "exact"))
    return recs


def verify_constants() -> list[CheckRecord]:
    recs = []
    s3 = Interval(3.0).sqrt()
    # 2 alpha0 sqrt3 = 4 sqrt3 + 1/14 < 7
    four_s3 = 4 * s3 + Interval.from_fraction(Fraction(1, 14))
    recs.append(_record("constant:4sqrt3+1/14<7", {"value": float(four_s3.hi)},
                        bool(four_s3.certainly_lt(7)), 7 - float(four_s3.hi), "interval"))
    alpha0 = 2 + 1 / (28 * s3)
    lhs = 2 * alpha0 * s3
    recs.append(_record("constant:2alpha0sqrt3_identity", {"alpha0": ALPHA0},
                        bool(lhs.lo <= four_s3.hi and four_s3.lo <= lhs.hi), 0.0, "interval"))
    # alpha0 solves 2 alpha sqrt3 = (1/14) alpha / (alpha - 2)
    rhs = Interval.from_fraction(Fraction(1, 14)) * alpha0 / (alpha0 - 2)
    recs.append(_record("constant:alpha0_balances_branches", {},
                        bool(lhs.lo <= rhs.hi and rhs.lo <= lhs.hi), 0.0, "interval"))
    recs.append(_record("constant:sqrt201>14", {}, 201 > 14 * 14, 201 - 196, "exact"))
    k = Interval(459.0).sqrt() * 28
    recs.append(_record("constant:28sqrt459<600", {"value": float(k.hi)}, bool(k.certainly_lt(600)),
                        600 - float(k.hi), "interval"))
    recs.append(_record("constant:5(45/49)^8<=2.53", {}, 5 * Fraction(45, 49) ** 8 <= _C_SUB1,
                        float(_C_SUB1 - 5 * Fraction(45, 49) ** 8), "exact"))
    recs.append(_record("constant:(1+9/49)*2.53<=3", {}, Fraction(58, 49) * _C_SUB1 <= 3,
                        float(3 - Fraction(58, 49) * _C_SUB1), "exact"))
    recs.append(_record("constant:(1+27/49)<2", {}, Fraction(76, 49) < 2, float(2 - Fraction(76, 49)), "exact"))
    recs.append(_record("constant:5*9/49<1", {}, 5 * Fraction(9, 49) < 1, float(1 - 5 * Fraction(9, 49)), "exact"))
    # 0.0003 max{a, b} <= max{0.0003 a, b/20}: holds since 0.0003 <= 1/20
    recs.append(_record("constant:c1<=1/20", {}, Fraction(3, 10000) <= Fraction(1, 20),
                        float(Fraction(1, 20) - Fraction(3, 10000)), "exact"))
    return recs


def verify_case9() -> list[CheckRecord]:
    """``n/2 < 4 max{wn, 2 sqrt n}`` when ``n <= 199`` or ``w >= 3/7``."""
    worst = math.inf
    ok = True
    for n in range(1, 200):
        # n = (1/2) sqrt(n) * 2 sqrt(n) < 8 * 2 sqrt(n)  <=>  n < 256
        ok &= n < 256
        worst = min(worst, 16 * math.sqrt(n) - n)
    rec1 = _record("case9:n<=199", {"n": [1, 199]}, ok, worst, "exact")
    w = WIDE_THRESHOLD
    # n <= (7/3) w n at w = 3/7 is an equality; then n/2 = (7/6) w n < 4 w n
    eq = Fraction(7, 3) * w == 1
    rec2 = _record("case9:w>=3/7", {"w": "3/7"}, eq and Fraction(7, 6) < 4, 0.0, "exact")
    return [rec1, rec2]


# ---------------------------------------------------------------------------
# sampled checks on concrete normalised sets


def _set_label(K: ConvexSet) -> str:
    if isinstance(K, Diamond):
        return f"diamond({K.epsilon:g})"
    if isinstance(K, Ellipse):
        return f"ellipse(b/a={K.b / K.a:g})"
    if isinstance(K, Segment):
        return "segment"
    return type(K).__name__.lower()


def _require_thin_normalized(K1: ConvexSet, m: int) -> float:
    if not is_normalized(K1):
        raise PreconditionError("set must be normalised (diameter 2, +-1 inside)")
    w = min_width(K1)
    if not w < 3.0 / 7.0:
        raise PreconditionError("w >= 3/7: this set is handled by the (z-1)^n witness")
    if m < 100:
        raise PreconditionError("m must be at least 100")
    return w


def _samples(K1: ConvexSet, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    nb = count // 2
    pts = np.concatenate([sample_boundary(K1, nb, rng), sample_interior(K1, count - nb, rng)])
    return pts


def verify_strip_bounds(K1: ConvexSet, count: int = 10_000, seed: int = 0, tol: float = 1e-9) -> CheckRecord:
    """``|Im z| <= w`` and ``|Re z| <= 1`` for points of a normalised set."""
    if not is_normalized(K1):
        raise PreconditionError("set must be normalised")
    w = min_width(K1)
    z = _samples(K1, count, seed)
    m1 = w + tol - float(np.max(np.abs(z.imag)))
    m2 = 1 + tol - float(np.max(np.abs(z.real)))
    return _record("strip_bounds", {"set": _set_label(K1), "samples": count}, m1 >= 0 and m2 >= 0,
                   min(m1, m2), "sampled")


def verify_norm_floor(K1: ConvexSet, m: int) -> CheckRecord:
    """``||p_m|| >= 1`` and ``||P_m|| >= 1``: ``0`` lies in ``K1`` and both equal 1 there."""
    if not is_normalized(K1):
        raise PreconditionError("set must be normalised")
    at0 = contains(K1, 0j)
    p = sup_norm(p_poly(m), K1, 1e-6)
    P = sup_norm(big_p_poly(m), K1, 1e-6)
    # exact: |p_m(0)| = |-1|^m = 1, |P_m(0)| = |-1| * 1 = 1
    ok = at0 and p.log_upper >= 0 and P.log_upper >= 0
    margin = min(p.log_upper, P.log_upper)
    return _record("norm_floor", {"set": _set_label(K1), "m": m, "log_norm_p": p.log_lower,
                                  "log_norm_P": P.log_lower}, ok, margin, "exact")


def verify_eq10(K1: ConvexSet, m: int, sample_count: int = 2000, seed: int = 0) -> CheckRecord:
    """``R(z) = |p_m'(z)| / ||p_m|| <= 2m|z|`` at sample points."""
    if not is_normalized(K1):
        raise PreconditionError("set must be normalised")
    P = p_poly(m)
    norm = sup_norm(P, K1, 1e-6)
    z = _samples(K1, sample_count, seed)
    z = z[z != 0]
    logR = log_abs_derivative(P, z) - norm.log_lower
    logB = np.log(2 * m * np.abs(z))
    margin = float(np.min(logB - logR))
    return _record("eq10", {"set": _set_label(K1), "m": m, "samples": len(z)}, margin >= -_LOG_SLACK,
                   margin, "sampled")


def verify_claim_11(K1: ConvexSet, m: int, sample_count: int = 10_000, seed: int = 0) -> CheckRecord:
    """``R(z0) <= sqrt3 max{2mw, 2 sqrt(2m)}`` at sampled ``z0`` in ``K1``.

    Points with ``|x0| <= sqrt2 w`` are also checked against the cruder
    ``2m|z0| <= sqrt3 2mw``; the rest against ``2m f(x0, y0)`` with ``y0``
    pushed out to ``+-w``.
    """
    w = _require_thin_normalized(K1, m)
    P = p_poly(m)
    norm = sup_norm(P, K1, 1e-8)
    z = _samples(K1, sample_count, seed)
    logR = log_abs_derivative(P, z) - norm.log_lower
    bound = SQRT3 * max(2 * m * w, 2 * math.sqrt(2 * m))
    maxR = float(np.exp(np.max(logR)))
    small = np.abs(z.real) <= math.sqrt(2) * w
    m_small = math.inf
    if small.any():
        m_small = float(np.min(SQRT3 * 2 * m * w - 2 * m * np.abs(z[small])))
    m_large = math.inf
    if (~small).any():
        zl = z[~small]
        x2, y2 = zl.real ** 2, zl.imag ** 2
        # both factors of f are nondecreasing in y^2, so compare them at y^2 <= w^2
        inner_w = (1 + w * w - x2) ** 2 + 4 * x2 * w * w
        inner_y = (1 + y2 - x2) ** 2 + 4 * x2 * y2
        m_large = float(min(np.min(inner_w - inner_y), np.min(w * w - y2)))
    margin = math.log(bound) - math.log(maxR)
    ok = margin >= -_LOG_SLACK and m_small >= -1e-9 * bound and m_large >= -1e-9
    params = {"set": _set_label(K1), "m": m, "w": w, "samples": sample_count, "max_R": maxR,
              "bound": bound, "small_x": int(small.sum()), "margin_small_x": m_small,
              "margin_y_monotone": m_large}
    return _record("claim11", params, ok, margin, "sampled")


def verify_theorem_1b(K1: ConvexSet, m: int, sample_count: int = 10_000, seed: int = 0) -> CheckRecord:
    """Both branches of the odd-degree argument at sampled points, plus ``||p_m|| <= 2 ||P_m||``."""
    w = _require_thin_normalized(K1, m)
    n = 2 * m + 1
    p, Pm = p_poly(m), big_p_poly(m)
    np_ = sup_norm(p, K1, 1e-8)
    nP = sup_norm(Pm, K1, 1e-8)
    eq14 = math.log(2) + nP.log_lower - np_.log_upper
    z = _samples(K1, sample_count, seed)
    a = ALPHA0
    pred = np.abs(z - 1) * np.abs((z + 1) / (2 * m) + z) <= a * np.abs(z)
    ldP = log_abs_derivative(Pm, z)
    ldp = log_abs_derivative(p, z)
    lp = log_abs(p, z)
    final_bound = 7 * max(w * n, 2 * math.sqrt(n))
    margins = {"eq14": eq14}
    if pred.any():
        # |P_m'(z)| <= alpha |p_m'(z)|
        margins["branchA_pointwise"] = float(np.min(math.log(a) + ldp[pred] - ldP[pred]))
        ra = 2 * a * np.exp(ldp[pred] - np_.log_lower)
        margins["branchA_ratio"] = float(2 * a * SQRT3 * max(w * n, 2 * math.sqrt(n)) - np.max(ra))
    if (~pred).any():
        zb = z[~pred]
        margins["branchB_2m|z|"] = float(np.min(2 * np.abs(zb + 1) / (a - 2) - 2 * m * np.abs(zb)))
        margins["branchB_pointwise"] = float(np.min(math.log(a / (a - 2)) + lp[~pred] - ldP[~pred]))
        margins["branchB_ratio"] = float(2 * math.sqrt(n) / 14 * a / (a - 2)
                                         - 2 * a / (a - 2))
    ratio = np.exp(ldP - nP.log_lower)
    margins["final"] = float(final_bound - np.max(ratio))
    ok = all(v >= -_LOG_SLACK for v in margins.values()) and math.sqrt(n) > 14
    params = {"set": _set_label(K1), "m": m, "n": n, "w": w, "samples": sample_count,
              "alpha0": a, "branchA": int(pred.sum()), "branchB": int((~pred).sum()),
              "max_ratio": float(np.max(ratio)), "bound": final_bound, "margins": margins}
    return _record("theorem1b", params, ok, min(margins.values()), "sampled")


# ---------------------------------------------------------------------------
# aggregate


def default_w_grid(step: float = 0.005) -> list[tuple[float, float]]:
    """Boxes ``[k step, (k+1) step]`` covering ``[0, 3/7 - 1e-9]``."""
    edges = list(np.arange(0.0, W_MAX, step)) + [W_MAX]
    return [(float(a), float(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def default_set_family() -> list[ConvexSet]:
    return [Diamond(0.05), Diamond(0.2), Ellipse(0j, 1.0, 0.1), Segment(-1, 1)]


def proof_certificate(w_grid=None, m_set=(100, 200, 1000), set_family=None,
                      sample_count: int = 2000, seed: int = 0) -> ProofReport:
    """Run every check; the report passes iff every entry does."""
    if w_grid is None:
        w_grid = default_w_grid()
    if set_family is None:
        set_family = default_set_family()
    if not w_grid or not m_set:
        raise ValueError("grids must be nonempty")
    rep = ProofReport()
    rep.entries += verify_identities()
    rep.entries += verify_constants()
    rep.entries += verify_case9()
    for m in m_set:
        for wb in w_grid:
            w = _box(wb)
            rep.entries.append(verify_subcase1(w, m))
            rep.entries.append(verify_subcase2(w, m))
            rep.entries.append(certify_g_bound(w, m))
            rep.entries.append(verify_summary(w, m))
    for K in set_family:
        rep.entries.append(verify_strip_bounds(K, seed=seed))
        for m in m_set:
            rep.entries.append(verify_norm_floor(K, m))
            rep.entries.append(verify_eq10(K, m, sample_count, seed))
            if min_width(K) < 3.0 / 7.0:
                rep.entries.append(verify_claim_11(K, m, sample_count, seed))
                rep.entries.append(verify_theorem_1b(K, m, sample_count, seed))
    return rep.sorted()
