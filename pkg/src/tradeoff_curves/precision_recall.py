"""Precision-recall curves between two discrete distributions.

Each point is indexed by a slope ``lam`` in ``[0, inf]``.  Precision is the
common mass of ``lam * P`` and ``Q``; recall is the common mass of ``P`` and
``Q / lam``.  A second route computes both from the likelihood ratio set
``A = {q_i <= lam * p_i}``.  The two routes must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .distributions import DistLike, _pair, scaled_min

DEFAULT_GRID_SIZE = 201


def _inv(lam: float) -> float:
    if lam == 0:
        return math.inf
    if math.isinf(lam):
        return 0.0
    return 1.0 / lam


@dataclass(frozen=True)
class PrPoint:
    lam: float
    alpha: float
    beta: float
    set_mask: np.ndarray | None = None


@dataclass(frozen=True)
class PrCurve:
    """PR points sorted by ``lam``, with the endpoints 0 and inf included."""

    points: tuple[PrPoint, ...]

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([pt.lam for pt in self.points])

    @property
    def alphas(self) -> np.ndarray:
        return np.array([pt.alpha for pt in self.points])

    @property
    def betas(self) -> np.ndarray:
        return np.array([pt.beta for pt in self.points])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def rows(self):
        return [(pt.lam, pt.alpha, pt.beta) for pt in self.points]


def default_lambda_grid(m: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    """Angularly spaced slopes ``tan(k pi / (2 (m + 1)))`` for k = 1..m.

    The middle slope (odd ``m``) is pinned to exactly 1 so that the
    ``lam = 1`` point is reproduced without rounding.
    """
    if m < 1:
        raise ValueError("grid size must be positive")
    k = np.arange(1, m + 1)
    grid = np.tan(k * np.pi / (2 * (m + 1)))
    if m % 2 == 1:
        grid[(m + 1) // 2 - 1] = 1.0
    return grid


def alpha_beta_direct(p: DistLike, q: DistLike, lambdas) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized precision/recall via atomwise minima, any ``lam`` in [0, inf]."""
    pw, qw = _pair(p, q)
    lams = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    alpha = np.empty(lams.size)
    beta = np.empty(lams.size)
    finite = np.isfinite(lams) & (lams > 0)
    if finite.any():
        lf = lams[finite][:, None]
        alpha[finite] = np.minimum(lf * pw, qw).sum(axis=1)
        beta[finite] = np.minimum(pw, qw / lf).sum(axis=1)
    for i in np.flatnonzero(~finite):
        lam = float(lams[i])
        alpha[i] = scaled_min(lam, pw, qw)
        beta[i] = scaled_min(_inv(lam), qw, pw)
    return alpha, beta


def likelihood_ratio_sets(p: np.ndarray, q: np.ndarray, lambdas) -> np.ndarray:
    """Boolean matrix, row k marks ``{q_i <= lam_k p_i}`` on the joint support."""
    lams = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    live = (p + q) > 0
    return (q[None, :] <= lams[:, None] * p[None, :]) & live[None, :]


def alpha_beta_via_sets(p: DistLike, q: DistLike, lambdas) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized precision/recall from P(A) and Q(A); requires 0 < lam < inf."""
    pw, qw = _pair(p, q)
    lams = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    if np.any(~np.isfinite(lams)) or np.any(lams <= 0):
        raise ValueError("likelihood-ratio route needs 0 < lam < inf")
    masks = likelihood_ratio_sets(pw, qw, lams)
    pa = masks @ pw
    qa = masks @ qw
    alpha = lams * (1.0 - pa) + qa
    beta = 1.0 - pa + qa / lams
    return alpha, beta


def pr_point_direct(p: DistLike, q: DistLike, lam: float) -> PrPoint:
    if lam < 0 or math.isnan(lam):
        raise ValueError(f"lam must be in [0, inf], got {lam!r}")
    a, b = alpha_beta_direct(p, q, [lam])
    return PrPoint(float(lam), float(a[0]), float(b[0]))


def pr_point_via_sets(p: DistLike, q: DistLike, lam: float) -> PrPoint:
    pw, qw = _pair(p, q)
    if not (0 < lam < math.inf):
        raise ValueError(f"lam must be in (0, inf), got {lam!r}")
    mask = likelihood_ratio_sets(pw, qw, [lam])[0]
    pa = float(pw[mask].sum())
    qa = float(qw[mask].sum())
    mask.setflags(write=False)
    return PrPoint(float(lam), lam * (1.0 - pa) + qa, 1.0 - pa + qa / lam, mask)


def _check_grid(grid: np.ndarray) -> None:
    if grid.size == 0:
        raise ValueError("lambda grid is empty")
    if np.any(~np.isfinite(grid)) or np.any(grid <= 0):
        raise ValueError("lambda grid must hold positive finite values")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("lambda grid must be strictly increasing")


def pr_curve(p: DistLike, q: DistLike, lambda_grid: Iterable[float] | None = None) -> PrCurve:
    """PR curve on ``lambda_grid`` plus the exact endpoints ``0`` and ``inf``."""
    grid = default_lambda_grid() if lambda_grid is None else np.asarray(list(lambda_grid), dtype=np.float64)
    _check_grid(grid)
    lams = np.concatenate(([0.0], grid, [math.inf]))
    alpha, beta = alpha_beta_direct(p, q, lams)
    return PrCurve(tuple(PrPoint(float(l), float(a), float(b))
                         for l, a, b in zip(lams, alpha, beta)))


def prd_membership(p: DistLike, q: DistLike, alpha: float, beta: float, tol: float = 1e-12) -> bool:
    """Whether ``(alpha, beta)`` is an achievable precision-recall pair.

    Uses the slope ``lam = alpha / beta`` (inf when ``beta == 0``) and compares
    against the curve point at that slope.  The origin always belongs.
    """
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    if alpha == 0 and beta == 0:
        return True
    lam = math.inf if beta == 0 else alpha / beta
    pt = pr_point_direct(p, q, lam)
    return alpha <= pt.alpha + tol and beta <= pt.beta + tol


def alpha_superdifferential(p: DistLike, q: DistLike, lam: float) -> tuple[float, float]:
    """Right and left derivatives of ``lam -> alpha_lam`` (concave, so right <= left)."""
    pw, qw = _pair(p, q)
    r = np.full(pw.shape, -1.0)
    pos = pw > 0
    r[pos] = qw[pos] / pw[pos]
    right = float(pw[pos & (r > lam)].sum())
    left = float(pw[pos & (r >= lam)].sum())
    return right, left


def ratio_values(p: DistLike, q: DistLike) -> np.ndarray:
    """Distinct positive finite ratios q_i / p_i on the common support."""
    pw, qw = _pair(p, q)
    common = (pw > 0) & (qw > 0)
    return np.unique(qw[common] / pw[common])


def augmented_grid(p: DistLike, q: DistLike, base: Sequence[float] | None = None) -> np.ndarray:
    """Default (or given) grid merged with every exact atom ratio."""
    base = default_lambda_grid() if base is None else np.asarray(base, dtype=np.float64)
    return np.union1d(base, ratio_values(p, q))
