"""Renyi divergences and the infinite-order divergence frontier.

At order infinity the divergence is the log of the largest atomwise ratio,
and the frontier is the coordinatewise ``-log`` image of the PR curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import DistLike, DistributionError, _pair
from .precision_recall import PrCurve


@dataclass(frozen=True)
class FrontierPoint:
    lam: float
    pi: float
    rho: float


def _neg_log(x: float) -> float:
    # masses can sum to 1 + ulp; the divergence itself is never negative
    return math.inf if x <= 0 else max(0.0, -math.log(x))


def renyi_divergence(mu: DistLike, nu: DistLike, a: float) -> float:
    """``D_a(mu || nu)`` for ``a`` in ``[0, inf]``; ``a = 1`` is KL."""
    m, n = _pair(mu, nu)
    if a < 0 or math.isnan(a):
        raise ValueError(f"order must be in [0, inf], got {a!r}")
    on = m > 0
    not_ac = bool(np.any(on & (n == 0)))
    if not_ac and a >= 1:
        return math.inf
    if math.isinf(a):
        return math.log(float(np.max(m[on] / n[on])))
    if a == 1:
        return float(np.sum(m[on] * np.log(m[on] / n[on])))
    s = float(np.sum(m[on] ** a * n[on] ** (1.0 - a)))
    if s <= 0:
        return math.inf
    return math.log(s) / (a - 1.0)


def sup_ratio(mu: DistLike, nu: DistLike) -> float:
    """``sup_A mu(A) / nu(A)``, computed as the largest atom ratio on ``supp mu``."""
    m, n = _pair(mu, nu)
    on = m > 0
    if np.any(on & (n == 0)):
        return math.inf
    return float(np.max(m[on] / n[on]))


def frontier_from_pr(pr: PrCurve) -> list[FrontierPoint]:
    return [FrontierPoint(pt.lam, _neg_log(pt.alpha), _neg_log(pt.beta)) for pt in pr.points]


def pr_pair_for_mu(mu: DistLike, p: DistLike, q: DistLike) -> tuple[float, float]:
    """Largest ``(alpha, beta)`` with ``Q >= alpha mu`` and ``P >= beta mu``.

    Equals ``(exp(-D_inf(mu||Q)), exp(-D_inf(mu||P)))``; computed as the
    smallest atom ratios to avoid a log/exp round trip.
    """
    m, pw = _pair(mu, p)
    _, qw = _pair(mu, q)
    on = m > 0
    if not on.any():
        raise DistributionError("mu has no mass")
    if np.any(on & ((pw == 0) | (qw == 0))):
        raise DistributionError("mu must be absolutely continuous w.r.t. both P and Q")
    return float(np.min(qw[on] / m[on])), float(np.min(pw[on] / m[on]))


def witness_mu(p: DistLike, q: DistLike, lam: float) -> np.ndarray | None:
    """Normalized atomwise ``min(lam p, q)``; None when it carries no mass.

    At the endpoints this is Q restricted to ``supp P`` (``lam = inf``) and P
    restricted to ``supp Q`` (``lam = 0``).
    """
    pw, qw = _pair(p, q)
    common = (pw > 0) & (qw > 0)
    if math.isinf(lam):
        w = np.where(common, qw, 0.0)
    elif lam == 0:
        w = np.where(common, pw, 0.0)
    else:
        w = np.minimum(lam * pw, qw)
    total = w.sum()
    if total <= 0:
        return None
    return w / total
