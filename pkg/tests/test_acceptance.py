"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line; the full list is repeated in the
pytest terminal summary.
"""
import math

import numpy as np
import pytest

from conftest import criterion
from inverse_markov.bounds import bound_values, diamond_width, sharpness_check
from inverse_markov.constructions import big_p_poly, certify_witness, p_poly
from inverse_markov.geometry import (
    AffineMap,
    Diamond,
    Disk,
    Ellipse,
    Segment,
    affine,
    diameter,
    min_width,
    polygonize,
)
from inverse_markov.polyroot import RootPoly, markov_ratio
from inverse_markov.proofcheck import ALPHA0, proof_certificate
from inverse_markov.search import (
    brute_force_mn,
    estimate_mn,
    ratio_bounds,
    sample_configurations,
    sample_ratio_floor,
)

UNIT_DISK = Disk(0j, 1.0)
INTERVAL = Segment(-1, 1)
THIN_SETS = {"diamond-0.05": Diamond(0.05), "diamond-0.2": Diamond(0.2),
             "ellipse-0.1": Ellipse(0j, 1.0, 0.1)}
BATTERY = {
    "disk": Disk(2 + 1j, 3.0),
    "diamond-0.05": Diamond(0.05),
    "diamond-0.2-moved": affine(Diamond(0.2), AffineMap(1.5 + 2j, -1 + 3j)),
    "ellipse-rotated": Ellipse(1 - 1j, 2.0, 0.2, 0.6),
    "segment": Segment(-2j, 3 + 1j),
}


def test_disk_equality():
    with criterion(1, "disk: M_n = n/2 for n = 1..12", 10):
        for n in range(1, 13):
            r = markov_ratio(RootPoly(1.0, (-1 + 0j,) * n), UNIT_DISK, 1e-7)
            assert r.lower <= n / 2 <= r.upper, n
            assert r.upper - r.lower <= 1e-6 * n, n
            assert sample_ratio_floor(UNIT_DISK, n, 1000) >= n / 2 - 1e-6, n


def test_interval_floor():
    with criterion(2, "segment: sampled floor > sqrt(n)/6", 30):
        for n in (4, 9, 16, 25, 49):
            assert sample_ratio_floor(INTERVAL, n, 1000) > math.sqrt(n) / 6, n


def stationary_value(m: int) -> float:
    """max of 2m|x|(1 - x^2)^(m-1) on [-1, 1], attained at x^2 = 1/(2m-1)."""
    return 2 * m / math.sqrt(2 * m - 1) * ((2 * m - 2) / (2 * m - 1)) ** (m - 1)


def test_interval_upper_behaviour():
    with criterion(3, "segment: ratio of (z^2-1)^m matches its stationary value", 10):
        for m in (2, 10, 50, 100):
            r = markov_ratio(p_poly(m), INTERVAL, 1e-8)
            assert r.upper <= math.sqrt(2 * m), m
            exact = stationary_value(m)
            assert r.lower <= exact * (1 + 1e-12) and exact <= r.upper * (1 + 1e-12), m
            assert abs(r.upper - exact) <= 1e-6 * exact, m


def test_even_witness_at_scale():
    with criterion(4, "even witness: ||p'|| <= sqrt3 max{2mw, 2sqrt(2m)} ||p||", 60):
        for K in THIN_SETS.values():
            w = min_width(K)
            for m in (100, 150):
                n = 2 * m
                r = markov_ratio(p_poly(m), K, 1e-6)
                assert r.upper <= math.sqrt(3) * max(w * n, 2 * math.sqrt(n)), (K, m)


def test_odd_witness_at_scale():
    with criterion(5, "odd witness: ||P'|| <= 7 max{wn, 2sqrt n} ||P||", 60):
        assert abs(2 * ALPHA0 * math.sqrt(3) - (4 * math.sqrt(3) + 1 / 14)) < 1e-12
        assert 4 * math.sqrt(3) + 1 / 14 < 7
        for K in THIN_SETS.values():
            w = min_width(K)
            for m in (100, 150):
                n = 2 * m + 1
                r = markov_ratio(big_p_poly(m), K, 1e-6)
                assert r.upper <= 7 * max(w * n, 2 * math.sqrt(n)), (K, m)


def certified_sample_floor(K, n: int, count: int, seed: int) -> float:
    """Smallest certified lower ratio over random root vectors; cheap screen first."""
    roots = sample_configurations(K, n, count, seed)
    lo = ratio_bounds(K, roots)[0]
    return float(np.min(lo))


def test_full_sweep():
    with criterion(6, "battery n = 1..300: witness <= 28 max, samples >= 0.0003 max", 300):
        for name, K in BATTERY.items():
            d, w = diameter(K), min_width(K)
            for n in range(1, 301):
                scale = max(w * n / d ** 2, math.sqrt(n) / d)
                c = certify_witness(K, n)
                assert c.upper <= 28 * scale, (name, n, c.upper)
                floor = certified_sample_floor(K, n, 20, seed=n)
                if floor < 0.0003 * scale:
                    floor = sample_ratio_floor(K, n, 20, seed=n)
                assert floor >= 0.0003 * scale, (name, n, floor)
            for n in (3, 30, 300):
                scale = max(w * n / d ** 2, math.sqrt(n) / d)
                assert sample_ratio_floor(K, n, 100, seed=1) >= 0.0003 * scale, (name, n)


def test_proof_certificate():
    with criterion(7, "proof certificate on the default w grid, m = 100, 200, 1000", 60):
        report = proof_certificate()
        assert report.passed, [e.check_id for e in report.failures]


def test_threshold_logic():
    with criterion(8, "linear-regime threshold and sharpness regime", 1):
        for n in range(1, 200):
            r = bound_values(2.0, 0.5, n)
            assert r.corollary1_active == (n > 16), n
            if n > 16:
                assert r.corollary1_upper == pytest.approx(28 * 0.5 * n / 4, rel=1e-15)
        s = sharpness_check(2.0, 0.001, 10)
        assert s.in_regime and s.upper_28 < math.sqrt(10) / 40


def test_diamond_width():
    with criterion(9, "calipers width of Diamond(eps) = 2 eps / sqrt(1 + eps^2)", 1):
        for eps in np.linspace(0.01, 1.0, 20):
            exact = 2 * eps / math.sqrt(1 + eps * eps)
            assert abs(min_width(polygonize(Diamond(float(eps)))) - exact) < 1e-9
            assert diamond_width(float(eps)) == pytest.approx(exact, abs=1e-15)


def test_optimizer_against_brute_force():
    t = AffineMap(1.5 - 0.5j, 2 + 1j)
    with criterion(10, "estimate <= grid search + 1e-6; affine equivariance", 120):
        for K in (UNIT_DISK, INTERVAL, Diamond(0.3)):
            for n in (1, 2):
                est = estimate_mn(K, n)
                grid = brute_force_mn(K, n, 0.02)
                assert est.value <= grid.value + 1e-6, (K, n, est.value, grid.value)
                moved = estimate_mn(affine(K, t), n)
                width = (est.value - est.lower) + abs(t.alpha) * (moved.value - moved.lower)
                assert abs(abs(t.alpha) * moved.value - est.value) <= width + 1e-15, (K, n)
