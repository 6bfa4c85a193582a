import math

import numpy as np
import pytest
from hypothesis import given, settings

from tradeoff_curves.oracle import oracle_alpha
from tradeoff_curves.precision_recall import (alpha_beta_direct, alpha_beta_via_sets,
                                              alpha_superdifferential, augmented_grid,
                                              default_lambda_grid, pr_curve, pr_point_direct,
                                              pr_point_via_sets, prd_membership)

from conftest import THREE_P, THREE_Q, dist_pairs, lambdas, random_pairs


def test_default_grid_shape():
    g = default_lambda_grid()
    assert g.size == 201
    assert g[100] == 1.0
    assert np.all(np.diff(g) > 0)
    assert g[0] == pytest.approx(math.tan(math.pi / 404))
    with pytest.raises(ValueError):
        default_lambda_grid(0)


def test_point_direct_examples():
    pt = pr_point_direct([0.5, 0.5], [0.5, 0.5], 2.0)
    assert (pt.alpha, pt.beta) == (1.0, 0.5)
    for lam in (0.0, 0.3, 1.0, 7.0, math.inf):
        pt = pr_point_direct([1, 0], [0, 1], lam)
        assert (pt.alpha, pt.beta) == (0.0, 0.0)
    pt = pr_point_direct(THREE_P, THREE_Q, 1.0)
    assert (pt.alpha, pt.beta) == (0.5, 0.5)
    rep = oracle_alpha(THREE_P, THREE_Q, 1.0)
    assert rep.oracle == pt.alpha


def test_point_direct_endpoints():
    # alpha_inf = Q(supp P), beta_0 = P(supp Q)
    p, q = [0.5, 0.3, 0.2, 0.0], [0.0, 0.4, 0.2, 0.4]
    assert pr_point_direct(p, q, math.inf).alpha == pytest.approx(0.6)
    assert pr_point_direct(p, q, math.inf).beta == 0.0
    assert pr_point_direct(p, q, 0.0).beta == pytest.approx(0.5)
    assert pr_point_direct(p, q, 0.0).alpha == 0.0
    with pytest.raises(ValueError):
        pr_point_direct(p, q, -1.0)


def test_point_via_sets_examples():
    pt = pr_point_via_sets([0.5, 0.5], [0.5, 0.5], 1.0)
    assert pt.set_mask.tolist() == [True, True]
    assert (pt.alpha, pt.beta) == (1.0, 1.0)
    pt = pr_point_via_sets(THREE_P, THREE_Q, 1.0)
    assert pt.set_mask.tolist() == [True, True, False]
    assert pt.alpha == 0.5 == pr_point_direct(THREE_P, THREE_Q, 1.0).alpha
    pt = pr_point_via_sets(THREE_P, THREE_Q, 0.25)
    assert not pt.set_mask.any()
    assert (pt.alpha, pt.beta) == (0.25, 1.0)
    for bad in (0.0, math.inf):
        with pytest.raises(ValueError):
            pr_point_via_sets(THREE_P, THREE_Q, bad)


def test_curve_examples():
    g = default_lambda_grid()
    pr = pr_curve([0.5, 0.5], [0.5, 0.5], g)
    assert len(pr) == 203
    assert pr.lambdas[0] == 0 and math.isinf(pr.lambdas[-1])
    np.testing.assert_array_equal(pr.alphas[1:-1], np.minimum(g, 1.0))
    np.testing.assert_array_equal(pr.betas[1:-1], np.minimum(1 / g, 1.0))
    pr = pr_curve([1, 0], [0, 1], g)
    assert not pr.alphas.any() and not pr.betas.any()
    pr = pr_curve(THREE_P, THREE_Q, g)
    np.testing.assert_allclose(pr.alphas[1:-1], np.minimum(g, 0.5), atol=1e-15, rtol=0)
    for lam in g[::20]:
        assert abs(oracle_alpha(THREE_P, THREE_Q, lam).gap) <= 3e-12


def test_curve_grid_errors():
    for bad in ([], [1.0, 1.0], [2.0, 1.0], [0.0, 1.0], [1.0, math.inf]):
        with pytest.raises(ValueError):
            pr_curve(THREE_P, THREE_Q, bad)


def test_membership_examples():
    assert prd_membership([0.5, 0.5], [0.5, 0.5], 1, 1)
    assert not prd_membership([1, 0], [0, 1], 0.1, 0.1)
    assert prd_membership([1, 0], [0, 1], 0, 0)
    assert prd_membership(THREE_P, THREE_Q, 0.5, 0.5)
    assert not prd_membership(THREE_P, THREE_Q, 0.6, 0.6)
    # beta = 0 uses the infinite slope: alpha up to Q(supp P) = 0.5
    assert prd_membership(THREE_P, THREE_Q, 0.5, 0.0)
    assert not prd_membership(THREE_P, THREE_Q, 0.51, 0.0)


@settings(max_examples=300, deadline=None)
@given(dist_pairs(max_n=64), lambdas)
def test_routes_agree(pair, lam):
    p, q = pair
    a = pr_point_direct(p, q, lam)
    b = pr_point_via_sets(p, q, lam)
    assert abs(a.alpha - b.alpha) <= 1e-9
    assert abs(a.beta - b.beta) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(dist_pairs(), lambdas)
def test_swap_symmetry(pair, lam):
    p, q = pair
    assert abs(pr_point_direct(p, q, lam).beta - pr_point_direct(q, p, 1 / lam).alpha) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(dist_pairs(), lambdas)
def test_point_invariants(pair, lam):
    pt = pr_point_direct(*pair, lam)
    assert abs(pt.alpha - lam * pt.beta) <= 1e-9
    assert -1e-15 <= pt.alpha <= min(lam, 1) + 1e-12
    assert -1e-15 <= pt.beta <= min(1 / lam, 1) + 1e-12


def test_curve_monotone_and_concave():
    for p, q in random_pairs(3, 200):
        pr = pr_curve(p, q)
        a, b = pr.alphas, pr.betas
        assert np.all(np.diff(a) >= -1e-12)
        assert np.all(np.diff(b) <= 1e-12)
        # concavity in lam on the finite grid: slopes of chords are nonincreasing
        lam, af = pr.lambdas[1:-1], a[1:-1]
        chords = np.diff(af) / np.diff(lam)
        assert np.all(np.diff(chords) <= 1e-9)
        assert a[-1] == pytest.approx(q[p > 0].sum(), abs=1e-12)
        assert b[0] == pytest.approx(p[q > 0].sum(), abs=1e-12)


def test_curve_points_are_members_and_boundary():
    rng = np.random.default_rng(5)
    for p, q in random_pairs(4, 100, max_n=20):
        pr = pr_curve(p, q, default_lambda_grid(41))
        for pt in pr.points[1:-1]:
            assert prd_membership(p, q, pt.alpha, pt.beta)
            assert not prd_membership(p, q, pt.alpha + 1e-3, pt.beta + 1e-3)
        lam = float(rng.uniform(0.1, 10))
        pt = pr_point_direct(p, q, lam)
        assert prd_membership(p, q, 0.9 * pt.alpha, 0.9 * pt.beta)


def test_vectorized_routes_match_scalar():
    p, q = next(random_pairs(9, 1, min_n=30, max_n=30))
    lams = default_lambda_grid(51)
    a1, b1 = alpha_beta_direct(p, q, lams)
    a2, b2 = alpha_beta_via_sets(p, q, lams)
    np.testing.assert_allclose(a1, a2, atol=1e-12, rtol=0)
    np.testing.assert_allclose(b1, b2, atol=1e-12, rtol=0)
    for k in (0, 25, 50):
        assert a1[k] == pr_point_direct(p, q, lams[k]).alpha
    with pytest.raises(ValueError):
        alpha_beta_via_sets(p, q, [0.0])


def test_superdifferential_brackets_finite_difference():
    p, q = np.array(THREE_P), np.array(THREE_Q)
    right, left = alpha_superdifferential(p, q, 0.5)
    assert (right, left) == (0.0, 1.0)
    right, left = alpha_superdifferential(p, q, 0.2)
    assert right == left == 1.0
    for p, q in random_pairs(11, 50, max_n=10):
        for lam in (0.3, 1.0, 2.5):
            right, left = alpha_superdifferential(p, q, lam)
            h = 1e-7
            fd_r = (pr_point_direct(p, q, lam + h).alpha - pr_point_direct(p, q, lam).alpha) / h
            fd_l = (pr_point_direct(p, q, lam).alpha - pr_point_direct(p, q, lam - h).alpha) / h
            assert right - 1e-6 <= fd_r <= left + 1e-6
            assert right - 1e-6 <= fd_l <= left + 1e-6


def test_augmented_grid_contains_ratios():
    g = augmented_grid(THREE_P, THREE_Q, [1.0, 2.0])
    assert g.tolist() == [0.5, 1.0, 2.0]
