import math

import numpy as np
import pytest

from inverse_markov.bounds import bound_report, diamond_width, komarov_upper
from inverse_markov.geometry import (
    AffineMap,
    Diamond,
    Disk,
    GeometryError,
    Polygon,
    ResourceLimitError,
    Segment,
    affine,
    contains,
)
from inverse_markov.search import (
    MarkovEstimate,
    brute_force_mn,
    estimate_mn,
    lattice_points,
    ratio_bounds,
    sample_configurations,
    sample_ratio_floor,
)
from inverse_markov.polyroot import RootPoly, markov_ratio


def segment_degree_one(a: float) -> float:
    """Ratio of z - a on [-1, 1]: ||P'|| = 1, ||P|| = 1 + |a|."""
    return 1.0 / (1.0 + abs(a))


def test_degree_one_segment_oracle():
    # minimised by a root at an endpoint, not at the centre
    grid = np.linspace(-1, 1, 2001)
    assert min(segment_degree_one(a) for a in grid) == pytest.approx(0.5)
    est = estimate_mn(Segment(-1, 1), 1, 200)
    assert est.value == pytest.approx(0.5, abs=1e-8)
    assert brute_force_mn(Segment(-1, 1), 1, 0.02).value == pytest.approx(0.5, abs=1e-8)


def test_degree_two_segment_closed_form():
    # P = (x - a)(x - b): ||P'|| = 2(1 + |a + b|/2); the double root at an endpoint gives 1
    b = brute_force_mn(Segment(-1, 1), 2, 0.02)
    assert b.value == pytest.approx(1.0, abs=1e-8)
    assert set(b.roots) <= {-1 + 0j, 1 + 0j}


def test_disk_degree_one_grid():
    b = brute_force_mn(Disk(0j, 1.0), 1, 0.05)
    assert b.value == pytest.approx(0.5, abs=1e-8) and b.method == "grid"
    assert abs(abs(b.roots[0]) - 1) < 1e-12


def test_estimate_invariants_and_determinism():
    K = Diamond(0.3)
    a = estimate_mn(K, 3, 300, seed=7)
    b = estimate_mn(K, 3, 300, seed=7)
    assert a == b
    assert all(contains(K, z, 1e-9) for z in a.roots)
    r = bound_report(K, 3)
    assert a.value >= max(r.komarov_lower, r.lp_lower, r.revesz_lower)
    assert MarkovEstimate.from_json(a.to_json()) == a


def test_estimate_witness_start_respects_upper_bound():
    K = Diamond(0.2)
    est = estimate_mn(K, 200, 100, starts=2)
    assert est.value <= komarov_upper(2.0, diamond_width(0.2), 200)


def test_estimate_equivariance():
    t = AffineMap(1.5 - 0.5j, 2 + 1j)
    K = Diamond(0.3)
    a = estimate_mn(K, 2, 400)
    b = estimate_mn(affine(K, t), 2, 400)
    assert b.value * abs(t.alpha) == pytest.approx(a.value, rel=1e-7)


def test_argument_checks():
    with pytest.raises(ValueError):
        estimate_mn(Disk(0j, 1.0), 0)
    with pytest.raises(ValueError):
        estimate_mn(Disk(0j, 1.0), 2, budget=10)
    with pytest.raises(ValueError):
        brute_force_mn(Disk(0j, 1.0), 4, 0.1)
    with pytest.raises(ResourceLimitError):
        brute_force_mn(Disk(0j, 1.0), 3, 0.01)
    with pytest.raises(GeometryError):
        lattice_points(Polygon((0.01 + 0.01j, 0.02 + 0.01j, 0.015 + 0.02j)), 0.1)
    with pytest.raises(ValueError):
        sample_ratio_floor(Disk(0j, 1.0), 2, 0)


def test_batched_bounds_bracket_certified_ratio():
    K = Diamond(0.3)
    roots = sample_configurations(K, 4, 50, seed=3)
    lo, hi = ratio_bounds(K, roots)
    for k in range(len(roots)):
        r = markov_ratio(RootPoly(1.0, tuple(roots[k])), K, 1e-8)
        assert lo[k] <= r.upper * (1 + 1e-12)
        assert r.lower <= hi[k] * (1 + 1e-12)


def test_sampler_examples():
    assert sample_ratio_floor(Segment(-1, 1), 25, 1000) > 5 / 6
    assert sample_ratio_floor(Disk(0j, 1.0), 10, 1000) >= 5 - 1e-6
    floor = sample_ratio_floor(Diamond(0.2), 50, 300)
    w = diamond_width(0.2)
    assert floor >= max(0.0003 * w * 50 / 4, math.sqrt(50) / 40)
