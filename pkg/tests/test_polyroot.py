import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inverse_markov.constructions import p_poly
from inverse_markov.geometry import AffineMap, Diamond, Disk, Ellipse, Segment, affine, boundary_points
from inverse_markov.polyroot import (
    LogValue,
    NormEstimate,
    RootPoly,
    RootsOutsideSetError,
    eval_derivative_log,
    eval_log,
    log_abs,
    log_abs_derivative,
    markov_ratio,
    sup_norm,
)


def segment_closed_form(m: int) -> float:
    """Max of 2m|x|(1-x^2)^(m-1) on [-1, 1], attained at x^2 = 1/(2m-1)."""
    return 2 * m * (2 * m - 1) ** -0.5 * ((2 * m - 2) / (2 * m - 1)) ** (m - 1)


def dense_max(P: RootPoly, K, spacing=1e-4, deriv=False) -> float:
    z = boundary_points(K, spacing)
    vals = log_abs_derivative(P, z) if deriv else log_abs(P, z)
    return float(np.exp(np.max(vals)))


def test_evaluation_matches_numpy_polyval():
    roots = (0.3 + 0.1j, -0.5, 0.2j, 0.2j)
    P = RootPoly(2 - 1j, roots)
    coeffs = (2 - 1j) * np.poly(roots)
    z = np.array([0.7 + 0.2j, -0.1 - 0.9j, 1.5])
    assert np.allclose(np.exp(log_abs(P, z)), np.abs(np.polyval(coeffs, z)), rtol=1e-12)
    dcoeffs = np.polyder(coeffs)
    assert np.allclose(np.exp(log_abs_derivative(P, z)), np.abs(np.polyval(dcoeffs, z)), rtol=1e-9)
    v = eval_log(P, z[0])
    assert abs(v.value - np.polyval(coeffs, z[0])) < 1e-12
    dv = eval_derivative_log(P, z[0])
    assert abs(dv.value - np.polyval(dcoeffs, z[0])) < 1e-9


def test_derivative_at_a_root():
    P = RootPoly(1.0, (0.5, 0.5, -0.5))
    # P'(0.5) = 0 (double root), P'(-0.5) = (-1)^2 = 1
    assert np.exp(log_abs_derivative(P, np.array([-0.5])))[0] == pytest.approx(1.0)
    assert np.exp(log_abs_derivative(P, np.array([0.5])))[0] == 0.0


def test_log_space_survives_huge_degree():
    P = p_poly(1000)
    v = log_abs(P, np.array([0.0 + 0.4j]))[0]
    assert v == pytest.approx(1000 * math.log(1.16))
    assert LogValue(-math.inf, 0.0).is_zero


@pytest.mark.parametrize("n", [1, 5, 12])
def test_disk_norm_of_shifted_power(n):
    P = RootPoly(1.0, (-1.0 + 0j,) * n)
    est = sup_norm(P, Disk(0j, 1.0), 1e-8)
    assert est.lower <= 2.0 ** n <= est.upper
    assert est.relative_width <= 1e-8


@given(st.lists(st.tuples(st.floats(-1, 1), st.floats(-0.2, 0.2)), min_size=1, max_size=8),
       st.sampled_from([Disk(0j, 1.0), Diamond(0.2), Ellipse(0j, 1.0, 0.3), Segment(-1, 1)]))
@settings(max_examples=40, deadline=None)
def test_certificate_brackets_dense_sampling(pts, K):
    roots = tuple(complex(x, y) for x, y in pts)
    P = RootPoly(1.0, roots)
    est = sup_norm(P, K, 1e-6, max_samples=10_000_000)
    dense = dense_max(P, K)
    assert dense <= est.upper * (1 + 1e-12)
    # lower is attained at a boundary point; the dense grid comes close to it
    assert dense >= est.lower * (1 - 1e-3)
    assert est.upper <= est.lower * (1 + 1e-6) * (1 + 1e-12)


@pytest.mark.parametrize("m", [2, 10, 50, 100])
def test_segment_closed_form(m):
    r = markov_ratio(p_poly(m), Segment(-1, 1), 1e-9)
    assert r.lower <= segment_closed_form(m) * (1 + 1e-9)
    assert segment_closed_form(m) <= r.upper * (1 + 1e-9)


def test_scaling_and_affine_invariance():
    P = RootPoly(1.0, (0.2 + 0.05j, -0.7, 0.5 - 0.02j))
    K = Diamond(0.3)
    r = markov_ratio(P, K, 1e-8)
    r2 = markov_ratio(P.scaled(1e6 - 3e5j), K, 1e-8)
    assert r2.lower == pytest.approx(r.lower, rel=1e-12)
    t = AffineMap(3 - 2j, 1 + 1j)
    rt = markov_ratio(P.mapped(t.alpha, t.beta), affine(K, t), 1e-8)
    assert rt.lower * abs(t.alpha) <= r.upper * (1 + 1e-9)
    assert r.lower <= rt.upper * abs(t.alpha) * (1 + 1e-9)


def test_roots_outside_rejected():
    with pytest.raises(RootsOutsideSetError):
        markov_ratio(RootPoly(1.0, (2.0,)), Disk(0j, 1.0))
    with pytest.raises(ValueError):
        sup_norm(RootPoly(1.0, (0.0,)), Disk(0j, 1.0), rel_tol=0.0)


def test_json_round_trips():
    P = RootPoly(1 - 2j, (0.1 + 0.2j, -0.3, -0.3))
    assert RootPoly.from_json(P.to_json()) == P
    est = sup_norm(P, Disk(0j, 1.0))
    obj = est.to_json()
    assert set(obj) >= {"lower", "upper", "witness", "mesh", "capped"}
    assert isinstance(est, NormEstimate) and not est.capped
