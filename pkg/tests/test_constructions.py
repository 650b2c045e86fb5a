from fractions import Fraction

import numpy as np
import pytest

from inverse_markov.constructions import (
    CaseTag,
    big_p_poly,
    certify_witness,
    normalized_bound,
    p_poly,
    q_poly,
    witness_case,
    witness_for,
)
from inverse_markov.geometry import AffineMap, Diamond, Disk, Ellipse, GeometryError, Segment, affine, normalize
from inverse_markov.polyroot import log_abs


def test_polynomials_have_the_right_roots():
    assert q_poly(4).degree == 4 and set(q_poly(4).roots) == {1}
    p = p_poly(3)
    assert p.degree == 6 and sorted(p.roots, key=lambda z: z.real) == [-1] * 3 + [1] * 3
    P = big_p_poly(3)
    assert P.degree == 7 and list(P.roots).count(1) == 4
    z = np.array([0.3 + 0.2j])
    assert np.exp(log_abs(P, z)) == pytest.approx(abs((z - 1) * (z * z - 1) ** 3))
    for f in (q_poly, p_poly, big_p_poly):
        with pytest.raises(ValueError):
            f(0)


@pytest.mark.parametrize("n,w,tag,m", [
    (50, 0.1, CaseTag.SMALL_N_OR_WIDE, 0),
    (199, 0.0, CaseTag.SMALL_N_OR_WIDE, 0),
    (200, 0.2, CaseTag.EVEN, 100),
    (201, 0.2, CaseTag.ODD, 100),
    (1000, 0.5, CaseTag.SMALL_N_OR_WIDE, 0),
])
def test_case_split(n, w, tag, m):
    assert witness_case(n, w) == (tag, m)


def test_threshold_three_sevenths_counts_as_wide():
    w = float(Fraction(3, 7))
    # float(3/7) rounds below or above 3/7; the next float up is certainly wide
    assert witness_case(400, np.nextafter(w, 1))[0] is CaseTag.SMALL_N_OR_WIDE
    assert witness_case(400, np.nextafter(w, 0))[0] is CaseTag.EVEN


def test_witness_requires_normalised_set():
    with pytest.raises(GeometryError):
        witness_for(10, Disk(0j, 2.0))
    assert witness_for(201, Diamond(0.2)).case_tag is CaseTag.ODD


def test_normalized_bound():
    assert normalized_bound(200, 0.2) == pytest.approx(7 * max(40, 2 * 200 ** 0.5))


@pytest.mark.parametrize("K", [Diamond(0.2), Disk(2 + 1j, 3.0), Segment(-2j, 3 + 1j),
                               affine(Ellipse(0j, 1.0, 0.1), AffineMap(2j, 1.0))])
@pytest.mark.parametrize("n", [1, 7, 200, 201])
def test_certified_witness_below_upper_bound(K, n):
    c = certify_witness(K, n)
    assert c.holds and c.margin > 0
    assert c.lower <= c.upper
    K1, t = normalize(K)
    assert c.upper == pytest.approx(c.normalized.upper * abs(t.alpha))
