import math

import numpy as np
import pytest

from tradeoff_curves.adaptation import (BoundViolation, DaInstance, bound_at_lambda, bound_lorenz,
                                        bound_pr_optimal, bound_report, bound_tv,
                                        source_target_errors)
from tradeoff_curves.distributions import DiscreteDistribution, DistributionError
from tradeoff_curves.precision_recall import alpha_superdifferential, default_lambda_grid

from conftest import THREE_P, THREE_Q, random_pairs


def inst(p, q, mask):
    return DaInstance(DiscreteDistribution(p), DiscreteDistribution(q), np.asarray(mask, bool))


def random_instances(seed, count, max_n=64):
    rng = np.random.default_rng(seed + 1000)
    for p, q in random_pairs(seed, count, max_n=max_n):
        yield inst(p, q, rng.random(p.size) < rng.random())


# a 4-atom split of the 3-atom pair so that eps_P = 0.1 is reachable by a mask
SPLIT_P = (0.4, 0.1, 0.5, 0.0)
SPLIT_Q = (0.2, 0.05, 0.25, 0.5)


def test_errors_examples():
    assert source_target_errors(inst(THREE_P, THREE_Q, [0, 0, 0])) == (0.0, 0.0)
    assert source_target_errors(inst(THREE_P, THREE_Q, [1, 1, 1])) == (1.0, 1.0)
    assert source_target_errors(inst(THREE_P, THREE_Q, [1, 0, 0])) == (0.5, 0.25)
    with pytest.raises(DistributionError):
        inst(THREE_P, THREE_Q, [1, 0])
    i = DaInstance.from_indices(DiscreteDistribution(THREE_P), DiscreteDistribution(THREE_Q), [0])
    assert i.error_mask.tolist() == [True, False, False]
    with pytest.raises(DistributionError):
        DaInstance.from_indices(DiscreteDistribution(THREE_P), DiscreteDistribution(THREE_Q), [3])


def test_bound_tv_examples():
    assert bound_tv(inst([0.5, 0.5], [0.5, 0.5], [1, 0])) == 0.5
    i = inst(SPLIT_P, SPLIT_Q, [0, 1, 0, 0])
    assert source_target_errors(i)[0] == pytest.approx(0.1)
    assert bound_tv(i) == pytest.approx(1.1)
    rep = bound_report(i)
    assert rep.bound_tv_clipped == 1.0 and not rep.informative["bound_tv"]


def test_bound_lorenz_examples():
    assert bound_lorenz(inst([0.5, 0.5], [0.5, 0.5], [1, 0])) == pytest.approx(0.5)
    assert bound_lorenz(inst(SPLIT_P, SPLIT_Q, [0, 1, 0, 0])) == pytest.approx(0.55)
    for mask in ([0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0]):
        assert bound_lorenz(inst([0.5, 0.5, 0, 0], [0, 0, 0.5, 0.5], mask)) == 1.0


def test_bound_pr_examples():
    b, lam = bound_pr_optimal(inst([0.5, 0.5, 0.0], [0.5, 0.3, 0.2], [0, 0, 0]))
    assert b == pytest.approx(0.2)  # eps_P = 0 so lam* = inf and bound = 1 - Q(supp P)
    i = inst([0.1, 0.9], [0.1, 0.9], [1, 0])
    b, lam = bound_pr_optimal(i)
    assert b == pytest.approx(0.1, abs=1e-12)
    assert lam == pytest.approx(1.0, abs=1e-6)
    i = inst(SPLIT_P, SPLIT_Q, [0, 1, 0, 0])
    b, lam = bound_pr_optimal(i)
    assert b == pytest.approx(0.55, abs=1e-12)
    assert lam == pytest.approx(0.5, abs=1e-12)
    assert bound_at_lambda(i, 1.0) == pytest.approx(0.6)
    assert b < bound_at_lambda(i, 1.0)


def test_lambda_one_halves_tv_penalty():
    for i in random_instances(51, 100):
        eps_p, _ = source_target_errors(i)
        tv = bound_tv(i) - eps_p
        one = bound_at_lambda(i, 1.0)
        assert one == pytest.approx(eps_p + 0.5 * tv, abs=1e-12)
        assert one <= bound_tv(i) + 1e-12
        if tv > 1e-12:
            assert one < bound_tv(i)


def test_bound_at_infinite_lambda():
    i = inst(THREE_P, THREE_Q, [0, 0, 0])
    assert bound_at_lambda(i, math.inf) == 0.5
    assert bound_at_lambda(inst(THREE_P, THREE_Q, [1, 0, 0]), math.inf) == math.inf


def test_report_examples():
    rep = bound_report(inst([0.3, 0.7], [0.3, 0.7], [1, 0]))
    for key in ("bound_tv", "bound_lorenz", "bound_pr", "bound_lambda_one"):
        assert getattr(rep, key) == pytest.approx(0.3, abs=1e-12)
    assert rep.eps_p == rep.eps_q == pytest.approx(0.3)
    rep = bound_report(inst(THREE_P, THREE_Q, [1, 0, 0]))
    assert rep.eps_p == 0.5 and rep.eps_q == 0.25
    assert rep.eps_q <= min(rep.bound_tv, rep.bound_lorenz, rep.bound_pr)
    assert all(rep.valid.values())
    d = rep.to_dict()
    assert d["bound_tv_clipped"] == 1.0 and "lambda_star" in d


def test_report_strict_raises_on_violation(monkeypatch):
    import tradeoff_curves.adaptation as ad
    monkeypatch.setattr(ad, "bound_lorenz", lambda inst, curve=None: 0.0)
    i = inst(THREE_P, THREE_Q, [1, 0, 0])
    with pytest.raises(BoundViolation):
        ad.bound_report(i)
    assert not ad.bound_report(i, strict=False).valid["bound_lorenz"]


def test_validity_and_equivalence_random():
    grid = np.concatenate(([0.0], default_lambda_grid()))
    for i in random_instances(52, 300):
        rep = bound_report(i)
        assert all(rep.valid.values())
        assert abs(rep.bound_lorenz - rep.bound_pr) <= 1e-6
        at_grid = np.array([bound_at_lambda(i, lam) for lam in grid[::10]])
        assert rep.bound_pr <= at_grid.min() + 1e-12


def test_first_order_condition():
    for i in random_instances(53, 200, max_n=20):
        eps_p, _ = source_target_errors(i)
        b, lam = bound_pr_optimal(i)
        if math.isinf(lam):
            # an infinite slope only pays off when no P-mass is in error
            assert eps_p == 0
            continue
        right, left = alpha_superdifferential(i.source.weights, i.target.weights, lam)
        assert right - 1e-9 <= eps_p <= left + 1e-9
