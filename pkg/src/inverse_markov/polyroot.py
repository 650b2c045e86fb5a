"""Complex polynomials in root form and certified sup-norms on convex sets.

All magnitudes are carried as natural logarithms: ``(z^2 - 1)^1000`` on a disk
of radius 2 is far outside the double range, its logarithm is not.

Certification
-------------
The sup of ``|f|`` (``f = P`` or ``f = P'``) over ``K`` is attained on the
boundary.  The boundary is cut into pieces ``gamma([u0, u1])``; on a piece,
``phi(u) = |f(gamma(u))|^2`` is smooth and

    max phi <= max(phi(u0), phi(u1)) + (u1 - u0)^2 / 8 * sup |phi''|.

``sup |phi''|`` is bounded through the majorant ``F(r) = prod_j (|c - a_j| + r)``
(``c`` the piece centre, ``r`` its enclosing radius): every Taylor coefficient
of ``P^(k)`` about ``c`` is dominated by the matching one of ``F^(k)``, so
``|P^(k)| <= F^(k)(r)`` on the piece.  Pieces whose bound cannot lift the
current maximum by more than ``rel_tol`` are discarded; the rest are bisected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    ABS_TOL,
    MAX_BOUNDARY_SAMPLES,
    Boundary,
    ConvexSet,
    contains,
    diameter,
)

_EPS = np.finfo(float).eps


class RootsOutsideSetError(ValueError):
    """The polynomial is not in the class: some root lies outside ``K``."""


@dataclass(frozen=True)
class RootPoly:
    """``lead * prod (z - root)``; degree is the number of roots."""

    lead: complex
    roots: tuple[complex, ...]
    _distinct: np.ndarray = field(init=False, repr=False, compare=False)
    _mult: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lead = complex(self.lead)
        roots = tuple(complex(r) for r in self.roots)
        if lead == 0 or not cmath.isfinite(lead):
            raise ValueError("leading coefficient must be finite and nonzero")
        if not roots:
            raise ValueError("degree must be at least 1")
        if not all(cmath.isfinite(r) for r in roots):
            raise ValueError("roots must be finite")
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "roots", roots)
        distinct, mult = np.unique(np.array(roots, dtype=complex), return_counts=True)
        object.__setattr__(self, "_distinct", distinct)
        object.__setattr__(self, "_mult", mult.astype(float))

    @classmethod
    def from_multiplicities(cls, pairs, lead: complex = 1.0) -> "RootPoly":
        roots: list[complex] = []
        for r, k in pairs:
            roots.extend([complex(r)] * int(k))
        return cls(lead, tuple(roots))

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def distinct_roots(self) -> np.ndarray:
        return self._distinct.copy()

    @property
    def multiplicities(self) -> np.ndarray:
        return self._mult.astype(int)

    def scaled(self, c: complex) -> "RootPoly":
        return RootPoly(self.lead * c, self.roots)

    def mapped(self, alpha: complex, beta: complex) -> "RootPoly":
        """Polynomial with roots ``alpha * root + beta`` (same leading coefficient)."""
        return RootPoly(self.lead, tuple(alpha * r + beta for r in self.roots))

    def to_json(self) -> dict:
        return {"lead": [self.lead.real, self.lead.imag],
                "roots": [[r.real, r.imag] for r in self.roots]}

    @classmethod
    def from_json(cls, obj: dict) -> "RootPoly":
        lr, li = obj["lead"]
        return cls(complex(lr, li), tuple(complex(x, y) for x, y in obj["roots"]))


@dataclass(frozen=True)
class LogValue:
    """A complex number stored as ``exp(log_magnitude) * exp(i * phase)``.

    ``log_magnitude == -inf`` marks an exact zero; its phase is meaningless.
    """

    log_magnitude: float
    phase: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf

    @property
    def magnitude(self) -> float:
        try:
            return math.exp(self.log_magnitude)
        except OverflowError:
            return math.inf

    @property
    def value(self) -> complex:
        return self.magnitude * cmath.exp(1j * self.phase) if not self.is_zero else 0j

    def __mul__(self, other: "LogValue") -> "LogValue":
        return LogValue(self.log_magnitude + other.log_magnitude,
                        math.remainder(self.phase + other.phase, 2 * math.pi))


@dataclass(frozen=True)
class NormEstimate:
    """Certified bracket ``lower <= ||f||_K <= upper``, stored in log scale."""

    log_lower: float
    log_upper: float
    witness: complex
    mesh: float
    capped: bool = False
    evaluations: int = 0

    @property
    def lower(self) -> float:
        return _safe_exp(self.log_lower)

    @property
    def upper(self) -> float:
        return _safe_exp(self.log_upper)

    @property
    def relative_width(self) -> float:
        return math.expm1(self.log_upper - self.log_lower)

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper,
                "log_lower": self.log_lower, "log_upper": self.log_upper,
                "witness": [self.witness.real, self.witness.imag],
                "mesh": self.mesh, "capped": self.capped}


@dataclass(frozen=True)
class RatioInterval:
    """Certified bracket for ``||P'||_K / ||P||_K``."""

    lower: float
    upper: float
    norm: NormEstimate
    derivative_norm: NormEstimate

    @property
    def capped(self) -> bool:
        return self.norm.capped or self.derivative_norm.capped

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "capped": self.capped,
                "norm": self.norm.to_json(), "derivative_norm": self.derivative_norm.to_json()}


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# vectorised evaluation of the monic part
#
# ``a`` holds distinct roots with trailing axis J (optionally batched), ``mu``
# their multiplicities; ``z`` holds points with trailing axis N.  Results have
# shape ``batch + (N,)``.


def _diffs(z: np.ndarray, a: np.ndarray) -> np.ndarray:
    return z[..., :, None] - a[..., None, :]


def _log_abs_monic(z, a, mu) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(_diffs(z, a))) @ mu if np.ndim(mu) == 1 else \
            np.sum(mu[..., None, :] * np.log(np.abs(_diffs(z, a))), axis=-1)


def _sum_of_products_log(z: complex, a: np.ndarray, mu: np.ndarray) -> tuple[float, float]:
    """``log|P'(z)|`` and phase for monic ``P`` via ``sum_j mu_j (z-a_j)^(mu_j-1) prod_{k!=j}``.

    Used near roots, where the logarithmic derivative is ill-conditioned.
    """
    d = z - a
    with np.errstate(divide="ignore"):
        logd = np.log(np.abs(d))
    ang = np.angle(d)
    logs, phases = [], []
    for j in range(len(a)):
        e = mu.copy()
        e[j] -= 1.0
        used = e != 0
        lt = math.log(mu[j]) + float(np.sum(e[used] * logd[used]))
        if lt == -math.inf or math.isnan(lt):
            continue
        logs.append(lt)
        phases.append(float(np.sum(e[used] * ang[used])))
    if not logs:
        return -math.inf, 0.0
    logs_a = np.array(logs)
    top = logs_a.max()
    s = np.sum(np.exp(logs_a - top) * np.exp(1j * np.array(phases)))
    if s == 0:
        return -math.inf, 0.0
    return float(top + math.log(abs(s))), float(np.angle(s))


def _log_abs_deriv_monic(z, a, mu, delta: float) -> np.ndarray:
    """``log|P'(z)|`` for monic ``P``, switching to sum-of-products within ``delta`` of a root."""
    d = _diffs(z, a)
    absd = np.abs(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        logd = np.log(absd)
        if np.ndim(mu) == 1:
            logp = logd @ mu
            ld = np.sum(mu / d, axis=-1)
        else:
            logp = np.sum(mu[..., None, :] * logd, axis=-1)
            ld = np.sum(mu[..., None, :] / d, axis=-1)
        out = logp + np.log(np.abs(ld))
    near = absd.min(axis=-1) <= delta
    if near.any():
        for idx in zip(*np.nonzero(near)):
            zz = z[idx[-1]] if z.ndim == 1 else z[idx]
            aa = a if a.ndim == 1 else a[idx[:-1]]
            mm = mu if np.ndim(mu) == 1 else mu[idx[:-1]]
            out[idx] = _sum_of_products_log(complex(zz), aa, mm)[0]
    return out


def _default_delta(P: RootPoly) -> float:
    a = P._distinct
    spread = float(np.max(np.abs(a[:, None] - a[None, :]))) if len(a) > 1 else 0.0
    return 1e-6 * max(1.0, spread)


def log_abs(P: RootPoly, z) -> np.ndarray:
    """Vectorised ``log|P(z)|``."""
    z = np.asarray(z, dtype=complex)
    return _log_abs_monic(z.ravel(), P._distinct, P._mult).reshape(z.shape) + math.log(abs(P.lead))


def log_abs_derivative(P: RootPoly, z, delta: float | None = None) -> np.ndarray:
    """Vectorised ``log|P'(z)|``."""
    z = np.asarray(z, dtype=complex)
    if delta is None:
        delta = _default_delta(P)
    out = _log_abs_deriv_monic(z.ravel(), P._distinct, P._mult, delta)
    return out.reshape(z.shape) + math.log(abs(P.lead))


def eval_log(P: RootPoly, z: complex) -> LogValue:
    """``P(z)`` as a LogValue."""
    z = complex(z)
    d = z - P._distinct
    if np.any(d == 0):
        return LogValue(-math.inf, 0.0)
    lm = math.log(abs(P.lead)) + float(np.log(np.abs(d)) @ P._mult)
    ph = cmath.phase(P.lead) + float(np.angle(d) @ P._mult)
    return LogValue(lm, math.remainder(ph, 2 * math.pi))


def eval_derivative_log(P: RootPoly, z: complex, delta: float | None = None) -> LogValue:
    """``P'(z)`` as a LogValue.

    Away from the roots (all distances above ``delta``) this is
    ``P(z) * sum mu_j / (z - a_j)``; closer in, the sum-of-products form.
    """
    z = complex(z)
    if delta is None:
        delta = _default_delta(P)
    a, mu = P._distinct, P._mult
    d = z - a
    base_phase = cmath.phase(P.lead)
    if np.min(np.abs(d)) > delta:
        s = complex(np.sum(mu / d))
        pv = eval_log(P, z)
        if s == 0:
            return LogValue(-math.inf, 0.0)
        return LogValue(pv.log_magnitude + math.log(abs(s)),
                        math.remainder(pv.phase + cmath.phase(s), 2 * math.pi))
    lm, ph = _sum_of_products_log(z, a, mu)
    if lm == -math.inf:
        return LogValue(-math.inf, 0.0)
    return LogValue(lm + math.log(abs(P.lead)), math.remainder(ph + base_phase, 2 * math.pi))


# ---------------------------------------------------------------------------
# majorants and piece bounds


def _majorant(c, r, a, mu):
    """``log F(r)`` and ``F^(k)(r) / F(r)`` for k = 1..3 at each piece centre."""
    D = np.abs(_diffs(c, a)) + r[..., :, None]
    with np.errstate(divide="ignore"):
        if np.ndim(mu) == 1:
            logF = np.log(D) @ mu
            inv = 1.0 / D
            s1 = inv @ mu
            s2 = (inv * inv) @ mu
            s3 = (inv * inv * inv) @ mu
        else:
            m = mu[..., None, :]
            logF = np.sum(m * np.log(D), axis=-1)
            inv = 1.0 / D
            s1 = np.sum(m * inv, axis=-1)
            s2 = np.sum(m * inv * inv, axis=-1)
            s3 = np.sum(m * inv * inv * inv, axis=-1)
    rho1 = s1
    rho2 = np.maximum(s1 * s1 - s2, 0.0)
    rho3 = np.maximum(s1 ** 3 - 3 * s1 * s2 + 2 * s3, 0.0)
    # floor the cancellation-prone combinations at a rounding-level fraction of s1^k
    rho2 = rho2 * (1 + 1e-12) + 1e-14 * s1 * s1
    rho3 = rho3 * (1 + 1e-12) + 1e-14 * s1 ** 3
    return logF, (np.ones_like(s1), rho1, rho2, rho3)


def _piece_log_bounds(boundary: Boundary, u0, u1, f0, f1, a, mu, order: int, ref):
    """Certified ``log sup |f|`` on each piece ``[u0, u1]``.

    ``f0, f1`` are ``log|f|`` at the piece ends and ``ref`` a reference log
    level (the running maximum) that keeps the exponentials in range.
    """
    um = 0.5 * (u0 + u1)
    du = u1 - u0
    v = boundary.speed(um)
    acc = boundary.accel(um)
    c = boundary.points(um)
    r = 0.5 * v * du
    logF, rho = _majorant(c, r, a, mu)
    g0, g1, g2 = rho[order], rho[order + 1], rho[order + 2]
    ref = np.asarray(ref)[..., None] if np.ndim(ref) else ref
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        ell = logF - ref
        scale = np.exp(2 * ell)
        phi_end = np.exp(2 * (np.maximum(f0, f1) - ref))
        curv = 2 * scale * (g0 * (g2 * v * v + g1 * acc) + g1 * g1 * v * v)
        second = phi_end + du * du / 8.0 * curv
        zeroth = scale * g0 * g0
        phi = np.minimum(second, zeroth)
        return ref + 0.5 * np.log(phi)


def _round_slack(degree: int) -> float:
    return 64 * _EPS * (degree + 16)


def _initial_spacing(boundary: Boundary, degree: int) -> float:
    return boundary.length_bound / max(64, 4 * degree)


def _certify(P: RootPoly, K: ConvexSet, order: int, rel_tol: float, max_samples: int,
             spacing: float | None = None, delta: float | None = None):
    """Branch-and-bound certificate of ``log sup_K |f|`` for the monic part of ``P``.

    Returns ``(log_lower, log_upper, witness, mesh, capped, evaluations)``.
    """
    bd = Boundary(K)
    a, mu = P._distinct, P._mult
    if delta is None:
        delta = 1e-6 * diameter(K)
    if spacing is None:
        spacing = _initial_spacing(bd, P.degree)

    def logf(u):
        z = bd.points(u)
        if order == 0:
            return _log_abs_monic(z, a, mu)
        return _log_abs_deriv_monic(z, a, mu, delta)

    knots = bd.knots(spacing, max_samples)
    vals = logf(knots)
    evals = len(knots)
    best = int(np.argmax(vals))
    logM = float(vals[best])
    u_best = float(knots[best])
    u0, u1 = knots[:-1], knots[1:]
    f0, f1 = vals[:-1], vals[1:]
    dropped = -math.inf
    capped = False
    log_tol = math.log1p(rel_tol)
    mesh = float(np.max(bd.speed(0.5 * (u0 + u1)) * (u1 - u0)))
    while True:
        b = _piece_log_bounds(bd, u0, u1, f0, f1, a, mu, order, logM)
        keep = ~(b <= logM + log_tol)
        if (~keep).any():
            dropped = max(dropped, float(np.max(b[~keep])))
        u0, u1, f0, f1, b = u0[keep], u1[keep], f0[keep], f1[keep], b[keep]
        if len(u0) == 0:
            remaining = -math.inf
            break
        if evals + len(u0) > max_samples:
            capped = True
            remaining = float(np.max(b))
            break
        um = 0.5 * (u0 + u1)
        fm = logf(um)
        evals += len(um)
        k = int(np.argmax(fm))
        if fm[k] > logM:
            logM, u_best = float(fm[k]), float(um[k])
        mesh = min(mesh, float(np.min(bd.speed(um) * (u1 - u0))) / 2)
        u0, u1 = np.concatenate([u0, um]), np.concatenate([um, u1])
        f0, f1 = np.concatenate([f0, fm]), np.concatenate([fm, f1])
    slack = _round_slack(P.degree)
    log_upper = max(logM, dropped, remaining) + slack
    witness = complex(bd.points(np.array([u_best]))[0])
    return logM - slack, log_upper, witness, mesh, capped, evals


def sup_norm(P: RootPoly, K: ConvexSet, rel_tol: float = 1e-6, *, order: int = 0,
             max_samples: int = MAX_BOUNDARY_SAMPLES) -> NormEstimate:
    """Certified sup-norm of ``P`` (``order=0``) or ``P'`` (``order=1``) over ``K``.

    ``upper / lower <= 1 + rel_tol`` unless the sample cap is hit, in which
    case the returned bracket is still valid but ``capped`` is set.
    """
    if not 1e-12 < rel_tol < 0.5:
        raise ValueError("rel_tol must lie in (1e-12, 0.5)")
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    lo, hi, wit, mesh, capped, evals = _certify(P, K, order, rel_tol, max_samples)
    ll = math.log(abs(P.lead))
    return NormEstimate(lo + ll, hi + ll, wit, mesh, capped, evals)


def check_roots_in(P: RootPoly, K: ConvexSet, tol: float | None = None) -> None:
    if tol is None:
        tol = ABS_TOL * max(1.0, diameter(K) / 2)
    bad = [complex(r) for r in P._distinct if not contains(K, complex(r), tol)]
    if bad:
        raise RootsOutsideSetError(f"{len(bad)} root(s) outside the set, e.g. {bad[0]}")


def markov_ratio(P: RootPoly, K: ConvexSet, rel_tol: float = 1e-6, *,
                 max_samples: int = MAX_BOUNDARY_SAMPLES, check_roots: bool = True) -> RatioInterval:
    """Certified bracket for ``||P'||_K / ||P||_K``.

    The leading coefficient cancels exactly: both norms are certified for the
    monic part and the ratio is formed before it is reattached.
    """
    if check_roots:
        check_roots_in(P, K)
    if not 1e-12 < rel_tol < 0.5:
        raise ValueError("rel_tol must lie in (1e-12, 0.5)")
    p = _certify(P, K, 0, rel_tol, max_samples)
    dp = _certify(P, K, 1, rel_tol, max_samples)
    ll = math.log(abs(P.lead))
    norm = NormEstimate(p[0] + ll, p[1] + ll, p[2], p[3], p[4], p[5])
    dnorm = NormEstimate(dp[0] + ll, dp[1] + ll, dp[2], dp[3], dp[4], dp[5])
    return RatioInterval(_safe_exp(dp[0] - p[1]), _safe_exp(dp[1] - p[0]), norm, dnorm)
