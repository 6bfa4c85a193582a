import numpy as np
import pytest
from hypothesis import strategies as st

from tradeoff_curves.distributions import DiscreteDistribution
from tradeoff_curves.oracle import random_pair

THREE_P = (0.5, 0.5, 0.0)
THREE_Q = (0.25, 0.25, 0.5)


@pytest.fixture
def three():
    """P = (1/2, 1/2, 0), Q = (1/4, 1/4, 1/2): overlap 1/2, one invented atom."""
    return DiscreteDistribution(THREE_P), DiscreteDistribution(THREE_Q)


@pytest.fixture
def rng():
    return np.random.default_rng(20201016)


def random_pairs(seed, count, min_n=2, max_n=64):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        yield random_pair(rng, n)


def _normalized(raw):
    w = np.asarray(raw, dtype=float)
    if w.sum() <= 0:
        w = w.copy()
        w[0] = 1.0
    return w / w.sum()


def weights(n):
    # a third of the entries may be exact zeros to exercise support mismatch
    entry = st.one_of(st.just(0.0), st.floats(1e-3, 1.0), st.floats(1e-3, 1.0))
    return st.lists(entry, min_size=n, max_size=n).map(_normalized)


def dist_pairs(min_n=1, max_n=10):
    return st.integers(min_n, max_n).flatmap(lambda n: st.tuples(weights(n), weights(n)))


lambdas = st.one_of(st.floats(1e-3, 1e3), st.sampled_from([0.5, 1.0, 2.0]))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
