import math

import numpy as np
import pytest

from inverse_markov.geometry import Diamond, Disk, Ellipse, Segment
from inverse_markov.interval import Interval
from inverse_markov.proofcheck import (
    ALPHA0,
    PreconditionError,
    certify_g_bound,
    default_w_grid,
    f_func,
    g_funcs,
    h_func,
    proof_certificate,
    t_star,
    verify_case9,
    verify_claim_11,
    verify_constants,
    verify_eq10,
    verify_identities,
    verify_norm_floor,
    verify_strip_bounds,
    verify_subcase1,
    verify_subcase2,
    verify_theorem_1b,
)


def g_dense_max(w: float, m: int) -> float:
    """Oracle: max of (t + w^2) h(t)^(m-1) on a fine t grid over [2w^2, 1]."""
    t = np.linspace(2 * w * w, 1.0, 200_001)
    h = (1 + w * w - t) ** 2 + 4 * w * w * t
    return float(np.max((t + w * w) * h ** (m - 1)))


@pytest.mark.parametrize("w", [0.0, 0.01, 0.05, 0.2, 0.4])
@pytest.mark.parametrize("m", [100, 1000])
def test_g_bound_against_dense_oracle(w, m):
    assert g_dense_max(w, m) <= max(3 * w * w, 2 / m) * (1 + 1e-12)


def test_scalar_functions_enclose_point_values():
    w, t, m = 0.1, 0.4, 100
    h = (1 + w * w - t) ** 2 + 4 * w * w * t
    H = h_func(Interval(t), Interval(w))
    assert H.lo <= h <= H.hi
    g, g1 = g_funcs(Interval(t), Interval(w), m)
    assert g.lo <= (t + w * w) * h ** (m - 1) <= g.hi
    assert g1.lo <= (t + w * w) * (1 + 2 * w * w - t) ** (m - 1) <= g1.hi
    assert g.hi <= g1.hi  # h <= 1 + 2w^2 - t on this range
    ts, interior = t_star(100, 0.01)
    assert ts == pytest.approx((1 - 97e-4) / 100) and interior
    assert not t_star(100, 0.2)[1]


def test_f_is_modulus_of_z_times_power():
    z = 0.3 + 0.05j
    assert f_func(z.real, z.imag, 50) == pytest.approx(abs(z * (z * z - 1) ** 49))


@pytest.mark.parametrize("box", [(0.0, 0.005), (0.1, 0.105), (0.425, 3 / 7 - 1e-9)])
@pytest.mark.parametrize("m", [100, 1000])
def test_subcases_pass_on_boxes(box, m):
    assert verify_subcase1(box, m).passed
    assert verify_subcase2(box, m).passed
    assert certify_g_bound(box, m).passed


def test_preconditions():
    with pytest.raises(PreconditionError):
        verify_subcase1((0.4, 0.43), 100)   # crosses 3/7
    with pytest.raises(PreconditionError):
        verify_subcase2((0.0, 0.1), 50)


def test_exact_and_constant_checks():
    for rec in verify_identities() + verify_constants() + verify_case9():
        assert rec.passed, rec
        assert rec.method in {"exact", "interval"}
    assert abs(2 * ALPHA0 * math.sqrt(3) - (4 * math.sqrt(3) + 1 / 14)) < 1e-12
    assert 2 * ALPHA0 * math.sqrt(3) < 7


@pytest.mark.parametrize("K", [Diamond(0.05), Diamond(0.2), Ellipse(0j, 1.0, 0.1)])
def test_sampled_checks_on_thin_sets(K):
    assert verify_strip_bounds(K, 2000).passed
    assert verify_norm_floor(K, 100).passed
    assert verify_eq10(K, 150, 1000).passed
    rec = verify_claim_11(K, 100, 2000)
    assert rec.passed and rec.method == "sampled"
    assert verify_theorem_1b(K, 150, 2000).passed


def test_wide_or_unnormalised_sets_are_rejected():
    with pytest.raises(PreconditionError):
        verify_claim_11(Disk(0j, 1.0), 100)
    with pytest.raises(PreconditionError):
        verify_strip_bounds(Segment(0, 3))


def test_grid_and_report_shape():
    grid = default_w_grid()
    assert grid[0][0] == 0.0 and grid[-1][1] == pytest.approx(3 / 7 - 1e-9, abs=0)
    assert all(b > a for a, b in grid)
    rep = proof_certificate(grid[:3], (100,), [Diamond(0.2)], sample_count=500)
    assert rep.passed
    ids = [e.check_id for e in rep.entries]
    assert ids == sorted(ids)
    assert {e.to_json()["method"] for e in rep.entries} <= {"exact", "interval", "sampled"}
