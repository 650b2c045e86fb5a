"""Convex compact sets in the complex plane.

Points are Python ``complex`` numbers throughout.  Every shape is an immutable
dataclass; the module-level functions dispatch on the shape type.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

ABS_TOL = 1e-9
MAX_BOUNDARY_SAMPLES = 2_000_000
_COLLINEAR_RTOL = 1e-12


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class ResourceLimitError(RuntimeError):
    """A sampling request exceeded the configured point cap."""


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def _lex(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon, vertices counterclockwise."""

    vertices: tuple[complex, ...]

    def __post_init__(self):
        vs = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        scale = max(abs(v - vs[0]) for v in vs)
        for i in range(len(vs)):
            c = _cross(vs[i - 1], vs[i], vs[(i + 1) % len(vs)])
            if not c > _COLLINEAR_RTOL * scale * scale:
                raise GeometryError("polygon vertices are not strictly convex and counterclockwise")


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise GeometryError("disk radius must be positive and finite")


@dataclass(frozen=True)
class Ellipse:
    """Ellipse with semi-axes ``a >= b >= 0``; ``angle`` rotates the major axis."""

    center: complex
    a: float
    b: float
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a > 0 and 0 <= self.b <= self.a):
            raise GeometryError("ellipse needs a >= b >= 0 with a > 0")


@dataclass(frozen=True)
class Diamond:
    """Convex hull of ``{+-1, +-i*epsilon}``."""

    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise GeometryError("diamond epsilon must lie in [0, 1]")


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))
        if self.start == self.end:
            raise GeometryError("segment endpoints must be distinct")


ConvexSet = Union[Polygon, Disk, Ellipse, Diamond, Segment]


@dataclass(frozen=True)
class AffineMap:
    """The map ``z -> alpha * z + beta``."""

    alpha: complex = 1.0
    beta: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if self.alpha == 0:
            raise GeometryError("affine map needs alpha != 0")

    def __call__(self, z):
        return self.alpha * z + self.beta

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.alpha, -self.beta / self.alpha)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``: apply ``other`` first."""
        return AffineMap(self.alpha * other.alpha, self.alpha * other.beta + self.beta)

    @property
    def scale(self) -> float:
        return abs(self.alpha)

    def is_identity(self) -> bool:
        return self.alpha == 1 and self.beta == 0


# ---------------------------------------------------------------------------
# construction


def convex_hull(points: Iterable[complex]) -> list[complex]:
    """Andrew's monotone chain; counterclockwise, collinear points dropped."""
    pts = sorted(set(complex(p) for p in points), key=_lex)
    if len(pts) <= 2:
        return pts
    scale = max(abs(p - pts[0]) for p in pts)
    eps = _COLLINEAR_RTOL * scale * scale

    def half(seq):
        out: list[complex] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= eps:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def make_polygon(points: Iterable) -> ConvexSet:
    """Convex hull of ``points`` as a Polygon, or a Segment when collinear.

    Points may be complex numbers or ``(x, y)`` pairs.
    """
    pts = [_to_complex(p) for p in points]
    if not pts:
        raise GeometryError("empty point set")
    if not all(math.isfinite(p.real) and math.isfinite(p.imag) for p in pts):
        raise GeometryError("non-finite coordinate")
    hull = convex_hull(pts)
    if len(hull) == 1:
        raise GeometryError("a single point has zero diameter")
    if len(hull) == 2:
        return Segment(hull[0], hull[1])
    return Polygon(tuple(hull))


def _to_complex(p) -> complex:
    if isinstance(p, (complex, float, int)):
        return complex(p)
    x, y = p
    return complex(float(x), float(y))


def polygonize(K: ConvexSet) -> ConvexSet:
    """Diamond as the equivalent Polygon (Segment when epsilon = 0); other shapes unchanged."""
    if isinstance(K, Diamond):
        e = K.epsilon
        if e == 0:
            return Segment(-1, 1)
        return Polygon((1 + 0j, complex(0, e), -1 + 0j, complex(0, -e)))
    return K


def _vertex_array(K: ConvexSet) -> np.ndarray:
    K = polygonize(K)
    if isinstance(K, Polygon):
        return np.array(K.vertices, dtype=complex)
    if isinstance(K, Segment):
        return np.array([K.start, K.end], dtype=complex)
    raise TypeError(f"{type(K).__name__} has no vertex form")


# ---------------------------------------------------------------------------
# diameter and width


def _edge_sweep(v: np.ndarray):
    """Rotating calipers over the edges of a convex polygon.

    Yields ``(i, j, height)`` where ``j`` is a vertex farthest from the line
    through edge ``i -> i+1`` and ``height`` is that distance.  Ties between
    consecutive far vertices yield both.
    """
    n = len(v)

    def height(i, j):
        a, b = v[i], v[(i + 1) % n]
        return _cross(a, b, v[j % n]) / abs(b - a)

    j = 1
    for i in range(n):
        if j == i or j == (i + 1) % n:
            j = (i + 2) % n
        steps = 0
        while steps < n and height(i, j + 1) > height(i, j):
            j = (j + 1) % n
            steps += 1
        h = height(i, j)
        yield i, j, h
        nxt = (j + 1) % n
        if nxt not in (i, (i + 1) % n) and abs(height(i, nxt) - h) <= 1e-14 * max(1.0, h):
            yield i, nxt, h


def _antipodal_pairs(v: np.ndarray) -> set[tuple[int, int]]:
    n = len(v)
    pairs = set()
    for i, j, _ in _edge_sweep(v):
        for a in (i, (i + 1) % n):
            if a != j:
                pairs.add((min(a, j), max(a, j)))
    return pairs


def diameter_pair(K: ConvexSet) -> tuple[complex, complex]:
    """A pair of points of ``K`` at distance ``diameter(K)``.

    Among several maximizing pairs the lexicographically smallest one (after
    ordering each pair) is returned, so the result is deterministic.
    """
    K = polygonize(K)
    if isinstance(K, Disk):
        return K.center - K.radius, K.center + K.radius
    if isinstance(K, Ellipse):
        u = K.a * cmath.exp(1j * K.angle)
        return tuple(sorted((K.center - u, K.center + u), key=_lex))
    if isinstance(K, Segment):
        return tuple(sorted((K.start, K.end), key=_lex))
    v = _vertex_array(K)
    pairs = _antipodal_pairs(v)
    best = max(abs(v[i] - v[j]) for i, j in pairs)
    cands = []
    for i, j in pairs:
        if abs(v[i] - v[j]) >= best * (1 - 1e-12):
            p, q = sorted((complex(v[i]), complex(v[j])), key=_lex)
            cands.append((_lex(p) + _lex(q), p, q))
    _, p, q = min(cands, key=lambda c: c[0])
    return p, q


def diameter(K: ConvexSet) -> float:
    """Largest distance between two points of ``K``."""
    if isinstance(K, Disk):
        return 2.0 * K.radius
    if isinstance(K, Ellipse):
        return 2.0 * K.a
    if isinstance(K, Diamond):
        return 2.0
    if isinstance(K, Segment):
        return abs(K.end - K.start)
    v = _vertex_array(K)
    return max(abs(v[i] - v[j]) for i, j in _antipodal_pairs(v))


def min_width(K: ConvexSet) -> float:
    """Smallest distance between two parallel lines enclosing ``K``."""
    if isinstance(K, Disk):
        return 2.0 * K.radius
    if isinstance(K, Ellipse):
        return 2.0 * K.b
    if isinstance(K, Diamond):
        e = K.epsilon
        return 2.0 * e / math.sqrt(1.0 + e * e)
    if isinstance(K, Segment):
        return 0.0
    return polygon_width(_vertex_array(K))


def polygon_width(v: np.ndarray) -> float:
    """Rotating-calipers width of a convex counterclockwise vertex array."""
    if len(v) < 3:
        return 0.0
    return min(h for _, _, h in _edge_sweep(v))


# ---------------------------------------------------------------------------
# distance, membership, projection


def _closest_on_segment(a: complex, b: complex, z: complex) -> complex:
    d = b - a
    t = ((z - a) * d.conjugate()).real / (d.real * d.real + d.imag * d.imag)
    return a + min(1.0, max(0.0, t)) * d


def _ellipse_closest_quadrant(e0: float, e1: float, y0: float, y1: float) -> tuple[float, float]:
    """Closest point on the ellipse curve for a query in the first quadrant.

    Bisection on the secular equation; ``e0 >= e1 > 0`` and ``y0, y1 >= 0``.
    """
    if y1 > 0:
        if y0 > 0:
            z0, z1 = y0 / e0, y1 / e1
            g = z0 * z0 + z1 * z1 - 1.0
            if g == 0:
                return y0, y1
            r0 = (e0 / e1) ** 2
            n0 = r0 * z0
            s0 = z1 - 1.0
            s1 = 0.0 if g < 0 else math.hypot(n0, z1) - 1.0
            s = s0
            for _ in range(200):
                s = 0.5 * (s0 + s1)
                if s == s0 or s == s1:
                    break
                r_0 = n0 / (s + r0)
                r_1 = z1 / (s + 1.0)
                gs = r_0 * r_0 + r_1 * r_1 - 1.0
                if gs > 0:
                    s0 = s
                elif gs < 0:
                    s1 = s
                else:
                    break
            return r0 * y0 / (s + r0), y1 / (s + 1.0)
        return 0.0, e1
    numer = e0 * y0
    denom = e0 * e0 - e1 * e1
    if numer < denom:
        x = numer / denom
        return e0 * x, e1 * math.sqrt(max(0.0, 1.0 - x * x))
    return e0, 0.0


def project(K: ConvexSet, z: complex) -> complex:
    """Closest point of ``K`` to ``z`` (``z`` itself when inside)."""
    z = complex(z)
    K = polygonize(K)
    if isinstance(K, Disk):
        r = abs(z - K.center)
        if r <= K.radius:
            return z
        return K.center + (z - K.center) * (K.radius / r)
    if isinstance(K, Segment):
        return _closest_on_segment(K.start, K.end, z)
    if isinstance(K, Ellipse):
        rot = cmath.exp(-1j * K.angle)
        w = (z - K.center) * rot
        x, y = w.real, w.imag
        if K.b == 0:
            p = complex(min(K.a, max(-K.a, x)), 0.0)
        elif (x / K.a) ** 2 + (y / K.b) ** 2 <= 1.0:
            return z
        else:
            px, py = _ellipse_closest_quadrant(K.a, K.b, abs(x), abs(y))
            p = complex(math.copysign(px, x), math.copysign(py, y))
        return K.center + p / rot
    vs = K.vertices
    n = len(vs)
    if all(_cross(vs[i], vs[(i + 1) % n], z) >= 0 for i in range(n)):
        return z
    best = None
    for i in range(n):
        c = _closest_on_segment(vs[i], vs[(i + 1) % n], z)
        if best is None or abs(c - z) < abs(best - z):
            best = c
    return best


def distance(K: ConvexSet, z: complex) -> float:
    return abs(complex(z) - project(K, z))


def contains(K: ConvexSet, z: complex, tol: float = ABS_TOL) -> bool:
    """True iff the distance from ``z`` to ``K`` is at most ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return distance(K, z) <= tol


def contains_many(K: ConvexSet, z: np.ndarray, tol: float = ABS_TOL) -> np.ndarray:
    """Vectorised membership test for an array of points."""
    z = np.asarray(z, dtype=complex)
    K = polygonize(K)
    if isinstance(K, Disk):
        return np.abs(z - K.center) <= K.radius + tol
    if isinstance(K, Ellipse) and K.b > 0:
        w = (z - K.center) * cmath.exp(-1j * K.angle)
        inside = (w.real / K.a) ** 2 + (w.imag / K.b) ** 2 <= 1.0
        out = inside.copy()
        for k in np.flatnonzero(~inside):
            out[k] = contains(K, complex(z[k]), tol)
        return out
    if isinstance(K, Polygon):
        v = np.array(K.vertices)
        a, b = v, np.roll(v, -1)
        d = b - a
        cr = (d.real[None, :] * (z.imag[:, None] - a.imag[None, :])
              - d.imag[None, :] * (z.real[:, None] - a.real[None, :])) / np.abs(d)[None, :]
        inside = np.all(cr >= -tol, axis=1)
        out = inside.copy()
        # near-corner points can pass every half-plane yet sit farther than tol
        for k in np.flatnonzero(inside & np.any(cr < 0, axis=1)):
            out[k] = contains(K, complex(z[k]), tol)
        return out
    return np.array([contains(K, complex(p), tol) for p in z.ravel()]).reshape(z.shape)


def bounding_box(K: ConvexSet) -> tuple[float, float, float, float]:
    """``(xmin, xmax, ymin, ymax)``."""
    K = polygonize(K)
    if isinstance(K, Disk):
        c, r = K.center, K.radius
        return c.real - r, c.real + r, c.imag - r, c.imag + r
    if isinstance(K, Ellipse):
        ca, sa = math.cos(K.angle), math.sin(K.angle)
        hx = math.hypot(K.a * ca, K.b * sa)
        hy = math.hypot(K.a * sa, K.b * ca)
        c = K.center
        return c.real - hx, c.real + hx, c.imag - hy, c.imag + hy
    v = _vertex_array(K)
    return v.real.min(), v.real.max(), v.imag.min(), v.imag.max()


# ---------------------------------------------------------------------------
# boundary parametrisation


class Boundary:
    """Piecewise parametrisation of the boundary of a convex set.

    Chains (polygons, segments) use ``u`` in ``[0, number_of_edges]`` with edge
    ``k`` on ``[k, k + 1]``.  Conics use ``u`` in ``[0, 1]`` mapped to the angle
    ``2 pi u``.  ``speed`` and ``accel`` bound ``|gamma'(u)|`` and
    ``|gamma''(u)|`` on the piece containing ``u``.
    """

    def __init__(self, K: ConvexSet):
        K = polygonize(K)
        self.shape = K
        if isinstance(K, (Polygon, Segment)):
            v = _vertex_array(K)
            self.closed = isinstance(K, Polygon)
            self._v = np.append(v, v[0]) if self.closed else v
            self._edges = np.diff(self._v)
            self._lengths = np.abs(self._edges)
            self.u_max = float(len(self._edges))
            self.conic = False
        else:
            if isinstance(K, Disk):
                c, a, b, ang = K.center, K.radius, K.radius, 0.0
            else:
                c, a, b, ang = K.center, K.a, K.b, K.angle
            self._c, self._a, self._b, self._rot = c, a, b, cmath.exp(1j * ang)
            self.closed = True
            self.u_max = 1.0
            self.conic = True

    @property
    def length_bound(self) -> float:
        if self.conic:
            return 2 * math.pi * self._a
        return float(self._lengths.sum())

    def knots(self, max_spacing: float, cap: int = MAX_BOUNDARY_SAMPLES) -> np.ndarray:
        """Parameter values whose images are at most ``max_spacing`` apart along the boundary."""
        if not max_spacing > 0:
            raise ValueError("max_spacing must be positive")
        if self.conic:
            count = max(4, math.ceil(self.length_bound / max_spacing))
            if count > cap:
                raise ResourceLimitError(f"{count} boundary samples exceed cap {cap}")
            return np.linspace(0.0, 1.0, count + 1)
        counts = np.maximum(1, np.ceil(self._lengths / max_spacing)).astype(int)
        total = int(counts.sum())
        if total > cap:
            raise ResourceLimitError(f"{total} boundary samples exceed cap {cap}")
        parts = [k + np.arange(c) / c for k, c in enumerate(counts)]
        parts.append(np.array([self.u_max]))
        return np.concatenate(parts)

    def _edge_index(self, u: np.ndarray) -> np.ndarray:
        return np.clip(np.floor(u).astype(int), 0, len(self._edges) - 1)

    def points(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.conic:
            th = 2 * np.pi * u
            return self._c + self._rot * (self._a * np.cos(th) + 1j * self._b * np.sin(th))
        k = self._edge_index(u)
        t = u - k
        # exact endpoints: the vertex itself rather than a rounded interpolant
        return np.where(t == 0, self._v[k], np.where(t == 1, self._v[k + 1], self._v[k] + t * self._edges[k]))

    def speed(self, u_mid) -> np.ndarray:
        u_mid = np.asarray(u_mid, dtype=float)
        if self.conic:
            return np.full(u_mid.shape, 2 * np.pi * self._a)
        return self._lengths[self._edge_index(u_mid)]

    def accel(self, u_mid) -> np.ndarray:
        u_mid = np.asarray(u_mid, dtype=float)
        if self.conic:
            return np.full(u_mid.shape, 4 * np.pi ** 2 * self._a)
        return np.zeros(u_mid.shape)


def boundary_points(K: ConvexSet, max_spacing: float, cap: int = MAX_BOUNDARY_SAMPLES) -> np.ndarray:
    """Closed chain of boundary points with consecutive spacing at most ``max_spacing``.

    Polygon vertices are always included.  For a Segment the points run along
    the segment itself from one endpoint to the other.
    """
    bd = Boundary(K)
    u = bd.knots(max_spacing, cap)
    if bd.closed:
        u = u[:-1]
    return bd.points(u)


# ---------------------------------------------------------------------------
# affine images and normalisation


def affine(K: ConvexSet, t: AffineMap) -> ConvexSet:
    """Image ``t(K)``; a Diamond maps to a Polygon unless ``t`` is the identity."""
    if t.is_identity():
        return K
    a, b = t.alpha, t.beta
    if isinstance(K, Disk):
        return Disk(a * K.center + b, abs(a) * K.radius)
    if isinstance(K, Ellipse):
        return Ellipse(a * K.center + b, abs(a) * K.a, abs(a) * K.b, K.angle + cmath.phase(a))
    K = polygonize(K)
    if isinstance(K, Segment):
        return Segment(a * K.start + b, a * K.end + b)
    return Polygon(tuple(a * v + b for v in K.vertices))


def normalize(K: ConvexSet) -> tuple[ConvexSet, AffineMap]:
    """Affine image of ``K`` with diameter 2 whose diameter pair lands on ``-1, +1``.

    Returns ``(K1, t)`` with ``K1 = t(K)``.
    """
    if isinstance(K, Diamond):
        return K, AffineMap()
    p, q = diameter_pair(K)
    if p == q:
        raise GeometryError("cannot normalise a set of zero diameter")
    alpha = 2.0 / (q - p)
    t = AffineMap(alpha, -(p + q) / (q - p))
    if isinstance(K, Disk):
        return Disk(0j, 1.0), t
    if isinstance(K, Ellipse):
        return Ellipse(0j, 1.0, K.b / K.a, 0.0), t
    if isinstance(K, Segment):
        return Segment(-1, 1), t
    img = []
    for v in K.vertices:
        if v == p:
            img.append(-1 + 0j)
        elif v == q:
            img.append(1 + 0j)
        else:
            img.append(t(v))
    return Polygon(tuple(img)), t


def is_normalized(K: ConvexSet, tol: float = ABS_TOL) -> bool:
    return abs(diameter(K) - 2.0) <= tol and contains(K, 1, tol) and contains(K, -1, tol)


# ---------------------------------------------------------------------------
# JSON description


def _pt(p) -> complex:
    x, y = p
    return complex(float(x), float(y))


def set_from_json(obj: dict) -> ConvexSet:
    """Parse a set description such as ``{"shape": "diamond", "epsilon": 0.3}``."""
    if not isinstance(obj, dict) or "shape" not in obj:
        raise GeometryError("set description must be an object with a 'shape' field")
    shape = obj["shape"]
    try:
        if shape == "polygon":
            return make_polygon([_pt(p) for p in obj["vertices"]])
        if shape == "disk":
            return Disk(_pt(obj.get("center", (0, 0))), float(obj["radius"]))
        if shape == "ellipse":
            return Ellipse(_pt(obj.get("center", (0, 0))), float(obj["a"]), float(obj["b"]),
                           float(obj.get("angle", 0.0)))
        if shape == "diamond":
            return Diamond(float(obj["epsilon"]))
        if shape == "segment":
            p, q = obj["endpoints"]
            return Segment(_pt(p), _pt(q))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError(f"bad {shape!r} description: {exc}") from exc
    raise GeometryError(f"unknown shape {shape!r}")


def _xy(z: complex) -> list[float]:
    return [z.real, z.imag]


def set_to_json(K: ConvexSet) -> dict:
    if isinstance(K, Polygon):
        return {"shape": "polygon", "vertices": [_xy(v) for v in K.vertices]}
    if isinstance(K, Disk):
        return {"shape": "disk", "center": _xy(K.center), "radius": K.radius}
    if isinstance(K, Ellipse):
        return {"shape": "ellipse", "center": _xy(K.center), "a": K.a, "b": K.b, "angle": K.angle}
    if isinstance(K, Diamond):
        return {"shape": "diamond", "epsilon": K.epsilon}
    return {"shape": "segment", "endpoints": [_xy(K.start), _xy(K.end)]}


# ---------------------------------------------------------------------------
# random sampling


def sample_boundary(K: ConvexSet, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` random boundary points (uniform in the boundary parameter)."""
    bd = Boundary(K)
    return bd.points(rng.uniform(0.0, bd.u_max, size=count))


def sample_interior(K: ConvexSet, count: int, rng: np.random.Generator, max_rounds: int = 1000) -> np.ndarray:
    """``count`` points uniform in ``K`` by rejection from the bounding box.

    A zero-area set (segment, degenerate ellipse) is sampled along its
    boundary parametrisation instead.
    """
    if min_width(K) == 0.0:
        return sample_boundary(K, count, rng)
    x0, x1, y0, y1 = bounding_box(K)
    out: list[np.ndarray] = []
    got = 0
    for _ in range(max_rounds):
        need = count - got
        if need <= 0:
            break
        z = rng.uniform(x0, x1, size=2 * need + 8) + 1j * rng.uniform(y0, y1, size=2 * need + 8)
        z = z[contains_many(K, z, 0.0)]
        out.append(z[:need])
        got += len(out[-1])
    if got < count:
        raise ResourceLimitError("rejection sampling did not produce enough points")
    return np.concatenate(out)
