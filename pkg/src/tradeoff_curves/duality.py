"""Convex duality between Lorenz and PR curves.

The Legendre transform of the Lorenz curve is ``F*(lam) = lam - alpha_lam``.
So precision at slope ``lam`` is ``min_t F(t) + lam (1 - t)``, and conversely
``F(t) = sup_lam alpha_lam + lam (t - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .lorenz import LorenzCurve, lorenz_eval, lorenz_subdifferential
from .precision_recall import PrCurve, PrPoint, default_lambda_grid

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_TOL = 1e-8


class GoldenResult(NamedTuple):
    x: float
    fun: float
    lo: float
    hi: float
    iterations: int


def golden_section_min(f: Callable[[float], float], a: float, b: float,
                       tol: float = GOLDEN_TOL, max_iter: int = 500) -> GoldenResult:
    """Minimize a unimodal function on ``[a, b]``.

    ``x``/``fun`` are the best evaluated point, ``lo``/``hi`` the final
    bracket.  The interval endpoints are evaluated as candidates too, so
    boundary minima are found exactly.
    """
    best = min(((a, f(a)), (b, f(b))), key=lambda c: c[1])
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while it < max_iter and b - a > tol:
        it += 1
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    for cand in ((x1, f1), (x2, f2)):
        if cand[1] < best[1]:
            best = cand
    return GoldenResult(best[0], best[1], a, b, it)


@dataclass(frozen=True, eq=False)
class ConjugateCurve:
    """Legendre transform of a piecewise-linear Lorenz curve.

    ``F*(lam) = max_k lam t_k - F_k``.  ``knots`` are the slopes where the
    maximizing breakpoint changes; on ``[knots[k-1], knots[k]]`` the slope of
    ``F*`` is ``t[k]``.
    """

    t: np.ndarray
    F: np.ndarray
    knots: np.ndarray

    def __call__(self, lam: float) -> float:
        if lam < 0:
            raise ValueError("conjugate is evaluated for lam >= 0")
        if math.isinf(lam):
            return math.inf
        return float(np.max(lam * self.t - self.F))

    def values_at_knots(self) -> np.ndarray:
        return np.array([self(k) for k in self.knots])


def conjugate(curve: LorenzCurve) -> ConjugateCurve:
    return ConjugateCurve(curve.t, curve.F, curve.slopes)


def legendre(curve: LorenzCurve, lam: float) -> float:
    """``sup_t lam t - F(t)``, exact over the breakpoints."""
    return conjugate(curve)(lam)


def _alpha_closed(curve: LorenzCurve, lam: float) -> float:
    # same quantity as lam - legendre(), without the cancellation for large lam
    return float(np.min(curve.F + lam * curve.tail))


def _alpha_bisection(curve: LorenzCurve, lam: float) -> float:
    """Binary search over breakpoints for the one whose subdifferential holds ``lam``."""
    ts = curve.t
    lo, hi = 0, ts.size - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        left, right = lorenz_subdifferential(curve, float(ts[mid]), atol=0.0)
        if right < lam:
            lo = mid + 1
        elif left > lam:
            hi = mid - 1
        else:
            return float(curve.F[mid]) + lam * float(curve.tail[mid])
    # only reachable when slopes dip within SLOPE_TOL of nonconvexity
    return _alpha_closed(curve, lam)


def _alpha_golden(curve: LorenzCurve, lam: float, tol: float = GOLDEN_TOL) -> float:
    # A bracket of width tol around the minimizer costs up to tol * |slope - lam|
    # in objective value, so the t-tolerance is divided by the steepest slope in play.
    steep = max(1.0, lam, float(curve.slopes[-1]) if curve.slopes.size else 1.0)
    res = golden_section_min(lambda t: lorenz_eval(curve, t) + lam * (1.0 - t), 0.0, 1.0,
                             max(tol / steep, 1e-15))
    return res.fun


def alpha_from_lorenz(curve: LorenzCurve, lam: float, method: str = "closed",
                      tol: float = GOLDEN_TOL) -> float:
    """Precision at slope ``lam`` recovered from a Lorenz curve.

    ``method`` is ``"closed"`` (exact conjugate), ``"bisection"`` (search on
    the subdifferential condition) or ``"golden"`` (derivative-free search of
    ``t -> F(t) + lam (1 - t)``).
    """
    if lam < 0 or math.isnan(lam):
        raise ValueError(f"lam must be nonnegative, got {lam!r}")
    if math.isinf(lam):
        return float(curve.F[-1])
    if method == "closed":
        return _alpha_closed(curve, lam)
    if method == "bisection":
        return _alpha_bisection(curve, lam)
    if method == "golden":
        return _alpha_golden(curve, lam, tol)
    raise ValueError(f"unknown method {method!r}")


def lambda_from_t(curve: LorenzCurve, t: float) -> tuple[float, float]:
    """Slopes ``lam`` whose likelihood-ratio set has P-mass ``t``.

    These are exactly the subgradients of F at ``t``.
    """
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    return lorenz_subdifferential(curve, t)


def lorenz_from_pr(pr: PrCurve, t: float) -> tuple[float, float]:
    """Biconjugate ``sup_lam alpha_lam + lam (t - 1)`` over the curve's slopes.

    Returns ``(value, maximizing lam)``.  This is a lower bound on F(t) that
    becomes exact once the grid holds the slopes of F.  The ``lam = inf``
    endpoint contributes only at ``t = 1``, where it gives ``alpha_inf``.
    """
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    lams = pr.lambdas
    alphas = pr.alphas
    finite = np.isfinite(lams)
    vals = alphas[finite] + lams[finite] * (t - 1.0)
    k = int(np.argmax(vals))
    best, best_lam = float(vals[k]), float(lams[finite][k])
    if t == 1.0 and (~finite).any():
        a_inf = float(alphas[~finite][0])
        if a_inf > best:
            best, best_lam = a_inf, math.inf
    return best, best_lam


def lorenz_points_from_pr(pr: PrCurve) -> list[tuple[float, float]]:
    """Biconjugate sampled at the kinks of the upper envelope of PR lines.

    Each finite point gives a line ``alpha + lam (t - 1)``; their upper envelope
    on [0, 1] is piecewise linear and its kinks plus both ends are returned.
    """
    lams = pr.lambdas
    alphas = pr.alphas
    finite = np.isfinite(lams)
    lines = sorted(zip(lams[finite].tolist(), alphas[finite].tolist()))
    # intersection of lines i < j (slopes increasing): t = 1 - (a_j - a_i) / (l_j - l_i)
    hull: list[tuple[float, float]] = []
    for lam, a in lines:
        if hull and hull[-1][0] == lam:
            if a <= hull[-1][1]:
                continue
            hull.pop()
        while len(hull) >= 2:
            (l1, a1), (l2, a2) = hull[-2], hull[-1]
            # drop the middle line when it never rises above its neighbours
            if (a2 - a1) * (lam - l2) <= (a - a2) * (l2 - l1):
                hull.pop()
            else:
                break
        hull.append((lam, a))
    ts = {0.0, 1.0}
    for (l1, a1), (l2, a2) in zip(hull, hull[1:]):
        tk = 1.0 - (a2 - a1) / (l2 - l1)
        if 0.0 < tk < 1.0:
            ts.add(tk)
    return [(tk, lorenz_from_pr(pr, tk)[0]) for tk in sorted(ts)]


def pr_from_lorenz(curve: LorenzCurve, lambdas: Sequence[float] | None = None) -> PrCurve:
    """PR curve recovered from a Lorenz curve on a grid plus the endpoints.

    Recall at a finite slope is ``alpha / lam``.  At ``lam = 0`` recall is one
    minus the P-mass of the flat initial part of F, and at ``lam = inf``
    precision is ``F(1)``.
    """
    grid = default_lambda_grid() if lambdas is None else np.asarray(lambdas, dtype=np.float64)
    flat = float(np.sum(np.diff(curve.t)[curve.slopes == 0]))
    pts = [PrPoint(0.0, 0.0, 1.0 - flat)]
    for lam in grid:
        a = _alpha_closed(curve, float(lam))
        pts.append(PrPoint(float(lam), a, a / float(lam)))
    pts.append(PrPoint(math.inf, float(curve.F[-1]), 0.0))
    return PrCurve(tuple(pts))
