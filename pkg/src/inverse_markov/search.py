"""Numerical upper estimates of the inverse Markov factor.

``estimate_mn`` runs a projected coordinate pattern search over root
positions, ``brute_force_mn`` is an exhaustive lattice oracle for degree at
most 3, and ``sample_ratio_floor`` reports the smallest certified ratio over
random root configurations.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .constructions import witness_for
from .geometry import (
    Boundary,
    ConvexSet,
    Disk,
    Ellipse,
    GeometryError,
    ResourceLimitError,
    bounding_box,
    contains,
    contains_many,
    diameter,
    normalize,
    polygonize,
    project,
    sample_interior,
    _vertex_array,
)
from .polyroot import RootPoly, _round_slack, markov_ratio

_log = logging.getLogger(__name__)

SEARCH_TOL = 1e-3
FINAL_TOL = 1e-8
DEFAULT_BUDGET = 2000
DEFAULT_STARTS = 8
MAX_GRID_TUPLES = 50_000_000
_COARSE_PIECES = 128
_REFINE_LEVELS = (512, 2048, 8192)
_BLOCK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class MarkovEstimate:
    value: float
    roots: tuple[complex, ...]
    evaluations: int
    seed: int | None
    method: str
    lower: float = field(default=float("nan"), compare=False)

    @property
    def degree(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        return {"value": self.value, "roots": [[r.real, r.imag] for r in self.roots],
                "evaluations": self.evaluations, "seed": self.seed, "method": self.method}

    @classmethod
    def from_json(cls, obj: dict) -> "MarkovEstimate":
        return cls(float(obj["value"]), tuple(complex(a, b) for a, b in obj["roots"]),
                   int(obj["evaluations"]), obj["seed"], obj["method"])


def _lex_key(roots) -> tuple:
    return tuple((round(r.real, 12), round(r.imag, 12)) for r in sorted(roots, key=lambda z: (z.real, z.imag)))


# ---------------------------------------------------------------------------
# pattern search


class _Objective:
    def __init__(self, K: ConvexSet, tol: float):
        self.K = K
        self.tol = tol
        self.count = 0
        self._cache: dict[tuple, float] = {}

    def __call__(self, roots: np.ndarray) -> float:
        key = tuple(roots.tolist())
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.count += 1
        val = markov_ratio(RootPoly(1.0, key), self.K, self.tol, check_roots=False).upper
        self._cache[key] = val
        return val


def _pattern_search(f: _Objective, K: ConvexSet, x: np.ndarray, step: float, min_step: float,
                    budget: int) -> tuple[np.ndarray, float]:
    x = np.array([project(K, z) for z in x], dtype=complex)
    fx = f(x)
    start = f.count
    dirs = (1.0, -1.0, 1j, -1j)
    while step >= min_step and f.count - start < budget:
        improved = False
        for j in range(len(x)):
            for d in dirs:
                if f.count - start >= budget:
                    break
                z = project(K, x[j] + d * step)
                if z == x[j]:
                    continue
                y = x.copy()
                y[j] = z
                fy = f(y)
                if fy < fx:
                    x, fx, improved = y, fy, True
                    break
        if not improved:
            step *= 0.5
    return x, fx


def _starts(K1: ConvexSet, n: int, starts: int, rng: np.random.Generator) -> list[np.ndarray]:
    out = [np.full(n, -1.0 + 0j)]
    try:
        out.append(np.array(witness_for(n, K1).polynomial.roots, dtype=complex))
    except GeometryError:
        pass
    while len(out) < starts:
        out.append(sample_interior(K1, n, rng))
    return out[:starts]


def estimate_mn(K: ConvexSet, n: int, budget: int = DEFAULT_BUDGET, seed: int = 0, *,
                starts: int = DEFAULT_STARTS, final_tol: float = FINAL_TOL) -> MarkovEstimate:
    """Smallest certified ratio found by a multistart projected pattern search.

    The search runs in the normalised frame of ``K`` (diameter 2, ``+-1`` in the
    set) and the best configurations are pulled back and certified on ``K``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if budget < 100:
        raise ValueError("budget must be at least 100")
    K1, t = normalize(K)
    back = t.inverse()
    rng = np.random.default_rng(seed)
    f = _Objective(K1, SEARCH_TOL)
    x0s = _starts(K1, n, starts, rng)
    per_start = max(1, budget // len(x0s))
    finals = []
    for x0 in x0s:
        assert all(contains(K1, z) for z in x0)
        x, _ = _pattern_search(f, K1, x0, 0.25, 1e-7, per_start)
        finals.append(x)
    best = None
    for x in finals:
        roots = tuple(complex(project(K, back(z))) for z in x)
        r = markov_ratio(RootPoly(1.0, roots), K, final_tol, check_roots=False)
        key = (r.upper, _lex_key(roots))
        if best is None or key < best[0]:
            best = (key, roots, r)
    (_, roots, r) = best
    return MarkovEstimate(r.upper, roots, f.count + len(finals), seed, "multistart", r.lower)


# ---------------------------------------------------------------------------
# batched bounds shared by the grid oracle and the sampler


def _discs(K: ConvexSet, pieces: int) -> tuple[np.ndarray, np.ndarray]:
    """Boundary pieces as (on-boundary centre, radius of a covering disc)."""
    b = Boundary(K)
    u = b.knots(b.length_bound / pieces)
    um = 0.5 * (u[:-1] + u[1:])
    c = b.points(um)
    r = b.speed(um) * np.diff(u) * 0.5 * (1 + 1e-12)
    return c, r


def _farthest_lower(K: ConvexSet, c: np.ndarray, mesh: np.ndarray) -> np.ndarray:
    """A lower bound for ``max_{z in K} |z - c|`` attained at points of K."""
    K = polygonize(K)
    if isinstance(K, Disk):
        return np.abs(c - K.center) + K.radius
    try:
        pts = _vertex_array(K)
    except Exception:
        pts = mesh
    return np.max(np.abs(c[:, None] - pts[None, :]), axis=1)


def _farthest_upper(K: ConvexSet, c: np.ndarray, discs) -> np.ndarray:
    K = polygonize(K)
    if isinstance(K, Disk):
        return np.abs(c - K.center) + K.radius
    if isinstance(K, Ellipse):
        return (np.abs(c - K.center) + K.a) * (1 + 1e-15)
    try:
        pts = _vertex_array(K)
        return np.max(np.abs(c[:, None] - pts[None, :]), axis=1)
    except Exception:
        cc, rr = discs
        return np.max(np.abs(c[:, None] - cc[None, :]) + rr[None, :], axis=1)


def _log_deriv_products(d: np.ndarray) -> np.ndarray:
    # sum over j of prod_{i != j} (z - a_i), exact without division
    n = d.shape[2]
    total = np.zeros(d.shape[:2], dtype=complex)
    for j in range(n):
        total += np.prod(np.delete(d, j, axis=2), axis=2)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(total))


def _log_deriv_at(z: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Lower estimate of ``log |P'(z)|`` for monic ``P``; rows are polynomials.

    Uses ``P'/P = sum 1/(z - a_i)`` and subtracts a bound on the summation
    error, so cancellation can only make the result smaller.
    """
    n = roots.shape[1]
    if n == 1:
        return np.zeros((roots.shape[0], len(z)))
    d = z[None, :, None] - roots[:, None, :]
    hit = np.any(d == 0, axis=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / d
        s = np.abs(np.sum(inv, axis=2))
        err = 4 * n * np.finfo(float).eps * np.sum(np.abs(inv), axis=2)
        out = np.sum(np.log(np.abs(d)), axis=2) + np.log(np.maximum(s - err, 0.0))
    rows = np.flatnonzero(np.any(hit, axis=1))
    if len(rows):
        out[rows] = _log_deriv_products(d[rows])
    return out


def ratio_bounds(K: ConvexSet, roots: np.ndarray, pieces: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Rigorous lower and (cheap) upper bounds of ``||P'|| / ||P||`` for many polynomials.

    ``||P||`` is bounded above through covering discs of boundary pieces and
    below by its values at the disc centres; ``||P'||`` is bounded below by its
    values there.  The upper bound uses ``||P'|| <= sum_j prod_{i != j} rho(a_i)``
    with ``rho`` the farthest distance in K, which is tight only at low degree.
    """
    roots = np.atleast_2d(np.asarray(roots, dtype=complex))
    n = roots.shape[1]
    c, r = _discs(K, pieces)
    rows = max(1, _BLOCK_ELEMENTS // (len(c) * n))
    if len(roots) > rows:
        parts = [_ratio_bounds_block(K, roots[s:s + rows], c, r) for s in range(0, len(roots), rows)]
        return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])
    return _ratio_bounds_block(K, roots, c, r)


def _ratio_bounds_block(K, roots, c, r):
    n = roots.shape[1]
    d = np.abs(c[None, :, None] - roots[:, None, :])
    with np.errstate(divide="ignore"):
        log_up = np.max(np.sum(np.log(d + r[None, :, None]), axis=2), axis=1)
        log_at = np.sum(np.log(d), axis=2)
    log_dp = np.max(_log_deriv_at(c, roots), axis=1)
    slack = _round_slack(n)
    lower = np.exp(log_dp - log_up - slack)
    rho = np.log(_farthest_upper(K, roots.ravel(), (c, r)).reshape(roots.shape))
    if n == 1:
        log_dp_up = np.zeros(len(roots))
    else:
        tot = np.sum(rho, axis=1)
        log_dp_up = np.log(np.sum(np.exp(tot[:, None] - rho), axis=1))
    upper = np.exp(log_dp_up - np.max(log_at, axis=1) + slack)
    return np.nan_to_num(lower, nan=0.0), upper


# ---------------------------------------------------------------------------
# lattice oracle


def lattice_points(K: ConvexSet, step: float) -> np.ndarray:
    """Multiples of ``step`` (real and imaginary parts) lying in K."""
    if not step > 0:
        raise ValueError("grid_step must be positive")
    x0, x1, y0, y1 = bounding_box(K)
    xs = np.arange(math.ceil(x0 / step - 1e-9), math.floor(x1 / step + 1e-9) + 1) * step
    ys = np.arange(math.ceil(y0 / step - 1e-9), math.floor(y1 / step + 1e-9) + 1) * step
    if len(xs) * len(ys) > MAX_GRID_TUPLES:
        raise ResourceLimitError("grid too fine")
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    z = z[contains_many(K, z, 1e-9)]
    if len(z) == 0:
        raise GeometryError("the grid does not meet K")
    return z[np.lexsort((z.imag, z.real))]


_SQUARE_MAPS = (
    lambda x, y: (x, y), lambda x, y: (-x, y), lambda x, y: (x, -y), lambda x, y: (-x, -y),
    lambda x, y: (y, x), lambda x, y: (-y, x), lambda x, y: (y, -x), lambda x, y: (-y, -x),
)


def _symmetries(K: ConvexSet) -> list:
    """Symmetries of the square lattice (fixing 0) that map K onto itself exactly."""
    K = polygonize(K)
    if isinstance(K, Disk):
        return list(_SQUARE_MAPS) if K.center == 0 else [_SQUARE_MAPS[0]]
    try:
        v = _vertex_array(K)
    except Exception:
        # ellipse: axis reflections when centred at 0 with axis-aligned axes
        if K.center == 0 and K.angle == 0:
            return list(_SQUARE_MAPS[:4])
        return [_SQUARE_MAPS[0]]
    own = {(x, y) for x, y in zip(v.real.tolist(), v.imag.tolist())}
    out = []
    for g in _SQUARE_MAPS:
        if {g(x, y) for x, y in own} == own:
            out.append(g)
    return out


def _fundamental_mask(pts: np.ndarray, step: float, maps: list) -> np.ndarray:
    """Points that are the lexicographic minimum of their orbit under ``maps``."""
    ix = np.rint(pts.real / step).astype(np.int64)
    iy = np.rint(pts.imag / step).astype(np.int64)
    keep = np.ones(len(pts), dtype=bool)
    for g in maps:
        gx, gy = g(ix, iy)
        keep &= (ix < gx) | ((ix == gx) & (iy <= gy))
    return keep


def _tuples_from(i: int, L: int, n: int) -> np.ndarray:
    """All sorted index tuples of length n whose first entry is i."""
    if n == 1:
        return np.array([[i]])
    if n == 2:
        j = np.arange(i, L)
        return np.stack([np.full(len(j), i), j], axis=1)
    a, b = np.triu_indices(L - i)
    return np.stack([np.full(len(a), i), a + i, b + i], axis=1)


def brute_force_mn(K: ConvexSet, n: int, grid_step: float, *, final_tol: float = FINAL_TOL,
                   cap: int = MAX_GRID_TUPLES) -> MarkovEstimate:
    """Exhaustive minimum of the certified ratio over sorted root tuples on a lattice.

    Every tuple gets a rigorous lower and upper bound in a cheap batched pass;
    only tuples whose lower bound undercuts the best upper bound seen are
    refined, and the final few are certified individually.
    """
    if not 1 <= n <= 3:
        raise ValueError("brute force supports 1 <= n <= 3")
    pts = lattice_points(K, grid_step)
    L = len(pts)
    total = math.comb(L + n - 1, n)
    if total > cap:
        raise ResourceLimitError(f"{total} root tuples exceed cap {cap}")
    slack = _round_slack(n)
    c, r = _discs(K, _COARSE_PIECES)
    dist = np.abs(c[None, :] - pts[:, None])
    with np.errstate(divide="ignore"):
        up_rows = np.log(dist + r[None, :])    # covering-disc bound per lattice point
        at_rows = np.log(dist)                 # exact value at disc centres
    lin_up = dist + r[None, :]
    rho_up = np.log(_farthest_upper(K, pts, (c, r)))
    evals = 0
    best_up = math.inf
    keep_idx, keep_lo = [], []
    maps = _symmetries(K) if n <= 2 else [_SQUARE_MAPS[0]]
    firsts = np.flatnonzero(_fundamental_mask(pts, grid_step, maps)) if len(maps) > 1 else np.arange(L)
    for i in firsts:
        if len(maps) > 1 and n == 2:
            # orbit representatives: first root in the fundamental domain, second anywhere
            tup = np.stack([np.full(L, i), np.arange(L)], axis=1)
            j0 = 0
        else:
            tup = _tuples_from(i, L, n)
            j0 = i
        evals += len(tup)
        if n == 2:
            # broadcast against row i instead of gathering both rows
            with np.errstate(divide="ignore"):
                log_up = np.log(np.max(lin_up[i] * lin_up[j0:], axis=1))
                log_at = np.log(np.max(dist[i] * dist[j0:], axis=1))
        else:
            log_up = np.max(np.sum(up_rows[tup], axis=1), axis=1)
            log_at = np.max(np.sum(at_rows[tup], axis=1), axis=1)
        if n == 1:
            log_dlo = log_dhi = np.zeros(len(tup))
        elif n == 2:
            mid = 0.5 * (pts[tup[:, 0]] + pts[tup[:, 1]])
            log_dlo = np.log(2 * _farthest_lower(K, mid, c))
            log_dhi = np.log(2 * _farthest_upper(K, mid, (c, r)))
        else:
            log_dlo = np.max(_log_deriv_at(c, pts[tup]), axis=1)
            rr = rho_up[tup]
            tot = rr.sum(axis=1)
            log_dhi = np.log(np.sum(np.exp(tot[:, None] - rr), axis=1))
        lo = np.exp(log_dlo - log_up - slack)
        hi = np.exp(log_dhi - log_at + slack)
        best_up = min(best_up, float(np.min(hi)))
        sel = lo <= best_up
        keep_idx.append(tup[sel])
        keep_lo.append(lo[sel])
    idx = np.concatenate(keep_idx)
    _log.debug("coarse pass: %d of %d tuples kept", len(idx), total)
    lo = np.concatenate(keep_lo)
    sel = lo <= best_up
    idx, lo = idx[sel], lo[sel]
    # refine the survivors on successively finer coverings
    for pieces in _REFINE_LEVELS:
        if len(idx) <= 64:
            break
        if n == 2:
            flo, fhi = _pair_bounds(K, pts[idx], pieces)
        else:
            flo, fhi = ratio_bounds(K, pts[idx], pieces)
        best_up = min(best_up, float(np.min(fhi)))
        lo = np.maximum(lo, flo)
        sel = lo <= best_up
        idx, lo = idx[sel], lo[sel]
        _log.debug("refine %d pieces: %d survivors", pieces, len(idx))
    order = np.lexsort((np.arange(len(lo)), lo))
    best = None
    for k in order:
        if best is not None and lo[k] > best[0][0]:
            break
        roots = tuple(sorted((complex(z) for z in pts[idx[k]]), key=lambda z: (z.real, z.imag)))
        rat = markov_ratio(RootPoly(1.0, roots), K, final_tol, check_roots=False)
        evals += 1
        key = (rat.upper, _lex_key(roots))
        if best is None or key < best[0]:
            best = (key, roots, rat)
    (_, roots, rat) = best
    return MarkovEstimate(rat.upper, roots, evals, None, "grid", rat.lower)


def _pair_bounds(K: ConvexSet, roots: np.ndarray, pieces: int, chunk: int = 4096):
    """Degree-2 bounds on a covering with ``pieces`` discs; ``||P'|| = 2 rho(midpoint)`` exactly."""
    c, r = _discs(K, pieces)
    chunk = max(16, chunk * 256 // pieces)
    slack = _round_slack(2)
    los, his = [], []
    for s in range(0, len(roots), chunk):
        R = roots[s:s + chunk]
        d0 = np.abs(c[None, :] - R[:, :1])
        d1 = np.abs(c[None, :] - R[:, 1:])
        # degree 2: products stay far from overflow, so skip the logs
        up = np.max((d0 + r) * (d1 + r), axis=1)
        at = np.max(d0 * d1, axis=1)
        mid = R.mean(axis=1)
        with np.errstate(divide="ignore"):
            los.append(np.exp(np.log(2 * _farthest_lower(K, mid, c)) - np.log(up) - slack))
            his.append(np.exp(np.log(2 * _farthest_upper(K, mid, (c, r))) - np.log(at) + slack))
    return np.concatenate(los), np.concatenate(his)


# ---------------------------------------------------------------------------
# sampler


def sample_configurations(K: ConvexSet, n: int, count: int, seed: int) -> np.ndarray:
    """``count`` root vectors drawn uniformly from K (bounding-box rejection)."""
    rng = np.random.default_rng(seed)
    return sample_interior(K, n * count, rng).reshape(count, n)


def sample_ratio_floor(K: ConvexSet, n: int, count: int, seed: int = 0, *,
                       rel_tol: float = 1e-7, chunk: int = 256) -> float:
    """Smallest certified lower end of the ratio over ``count`` random root vectors.

    A batched bound screens all samples; individual certification then runs in
    order of increasing screen value until the screen rules out the rest.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    roots = sample_configurations(K, n, count, seed)
    pieces = max(256, 8 * n)
    screen = np.concatenate([ratio_bounds(K, roots[s:s + chunk], pieces)[0]
                             for s in range(0, count, chunk)])
    best = math.inf
    for k in np.argsort(screen, kind="stable"):
        if screen[k] >= best:
            break
        rat = markov_ratio(RootPoly(1.0, tuple(roots[k])), K, rel_tol, check_roots=False)
        best = min(best, rat.lower)
    return float(best)
