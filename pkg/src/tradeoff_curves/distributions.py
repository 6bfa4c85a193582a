"""Discrete distributions on a shared finite support and basic measure primitives.

P and Q always live on one common index set, so absolute continuity and
supports reduce to atomwise tests on the weight vectors.  Conventions used
throughout the package: ``0/0 = 0`` and ``0 * inf = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

NORMALIZATION_TOL = 1e-9

# Default discretization settings for Gaussian mixtures.
DEFAULT_GRID_POINTS = 2001
DEFAULT_SIGMA_SPAN = 6.0


def summation_slack(n: int) -> float:
    """Worst-case rounding error of summing ``n`` probabilities."""
    return n * np.finfo(np.float64).eps


class DistributionError(ValueError):
    """Raised for invalid weights, mismatched supports or bad mixture specs."""


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Probability weights indexed over a finite support.

    Weights within ``NORMALIZATION_TOL`` of summing to one are renormalized
    exactly; anything further off is rejected.  A sum that is off only by
    floating-point summation error is left alone, so already-normalized
    weights keep their exact bits.  The stored array is read-only.
    """

    weights: np.ndarray
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).ravel()
        if w.size == 0:
            raise DistributionError("distribution needs at least one atom")
        if not np.all(np.isfinite(w)):
            raise DistributionError("weights must be finite")
        neg = np.flatnonzero(w < 0)
        if neg.size:
            raise DistributionError(f"negative weight at atom {int(neg[0])}: {w[neg[0]]!r}")
        total = w.sum()
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DistributionError(f"weights sum to {total!r}, not 1")
        if abs(total - 1.0) > summation_slack(w.size):
            w = w / total
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.size

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"DiscreteDistribution({label}n={len(self)})"

    @property
    def support(self) -> np.ndarray:
        return self.weights > 0

    def mass(self, mask) -> float:
        """Measure of the atoms selected by a boolean mask."""
        return float(self.weights[np.asarray(mask, dtype=bool)].sum())


DistLike = Union[DiscreteDistribution, Sequence[float], np.ndarray]


def as_weights(d: DistLike) -> np.ndarray:
    if isinstance(d, DiscreteDistribution):
        return d.weights
    return np.asarray(d, dtype=np.float64)


def _pair(p: DistLike, q: DistLike) -> tuple[np.ndarray, np.ndarray]:
    pw, qw = as_weights(p), as_weights(q)
    if pw.shape != qw.shape:
        raise DistributionError(f"support sizes differ: {pw.size} vs {qw.size}")
    return pw, qw


def scaled_min(scale: float, p: np.ndarray, q: np.ndarray) -> float:
    """Total mass of ``(scale * p) ^ q`` with ``0 * inf = 0``."""
    if math.isinf(scale):
        return float(q[p > 0].sum())
    return float(np.minimum(scale * p, q).sum())


def measure_min(p: DistLike, q: DistLike, scale: float = 1.0) -> float:
    """Largest common mass of ``scale * P`` and ``Q``.

    ``scale`` may be ``math.inf``; then the result is ``Q(supp P)``.
    """
    if scale < 0 or math.isnan(scale):
        raise ValueError(f"scale must be in [0, inf], got {scale!r}")
    pw, qw = _pair(p, q)
    return scaled_min(scale, pw, qw)


def total_variation(p: DistLike, q: DistLike) -> float:
    """Full-mass total variation ``sum |p_i - q_i|``, in [0, 2]."""
    pw, qw = _pair(p, q)
    return float(np.abs(pw - qw).sum())


@dataclass(frozen=True)
class LikelihoodRatioProfile:
    """Per-atom densities with respect to P + Q, and the ratio q_i / p_i.

    ``inert`` flags atoms outside both supports; their densities are zero and
    their ratio is 0 by the 0/0 convention.
    """

    dp: np.ndarray
    dq: np.ndarray
    ratio: np.ndarray
    inert: np.ndarray

    def order(self) -> np.ndarray:
        """Indices of non-inert atoms sorted by ratio (stable)."""
        idx = np.flatnonzero(~self.inert)
        return idx[np.argsort(self.ratio[idx], kind="stable")]


def ratios(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Elementwise q/p with 0/0 = 0 and q/0 = inf for q > 0."""
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = q[pos] / p[pos]
    out[~pos & (q > 0)] = np.inf
    return out


def ratio_profile(p: DistLike, q: DistLike) -> LikelihoodRatioProfile:
    pw, qw = _pair(p, q)
    total = pw + qw
    inert = total == 0
    dp = np.zeros_like(pw)
    dq = np.zeros_like(qw)
    live = ~inert
    dp[live] = pw[live] / total[live]
    dq[live] = qw[live] / total[live]
    return LikelihoodRatioProfile(dp=dp, dq=dq, ratio=ratios(pw, qw), inert=inert)


@dataclass(frozen=True)
class GmmSpec:
    """One-dimensional Gaussian mixture: tuple of ``(weight, mean, std)``."""

    components: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        comps = tuple((float(w), float(m), float(s)) for w, m, s in self.components)
        if not comps:
            raise DistributionError("mixture needs at least one component")
        for i, (w, m, s) in enumerate(comps):
            if not (0 < w <= 1):
                raise DistributionError(f"component {i}: weight {w} not in (0, 1]")
            if not (s > 0) or not math.isfinite(s) or not math.isfinite(m):
                raise DistributionError(f"component {i}: need finite mean and std > 0")
        total = sum(w for w, _, _ in comps)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DistributionError(f"mixture weights sum to {total!r}, not 1")
        object.__setattr__(self, "components", comps)

    @property
    def means(self):
        return [m for _, m, _ in self.components]

    @property
    def stds(self):
        return [s for _, _, s in self.components]

    def density(self, x: np.ndarray, sigma_span: float = math.inf) -> np.ndarray:
        """Mixture density, each component truncated beyond ``sigma_span`` stds."""
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        for w, m, s in self.components:
            z = (x - m) / s
            comp = np.exp(-0.5 * z * z) / (s * math.sqrt(2 * math.pi))
            comp[np.abs(z) > sigma_span] = 0.0
            out += w * comp
        return out


def gmm_grid(spec_p: GmmSpec, spec_q: GmmSpec, grid_points: int = DEFAULT_GRID_POINTS,
             sigma_span: float = DEFAULT_SIGMA_SPAN) -> np.ndarray:
    """Shared uniform grid spanning both mixtures."""
    if grid_points < 2:
        raise DistributionError("grid_points must be at least 2")
    if not sigma_span > 0:
        raise DistributionError("sigma_span must be positive")
    means = spec_p.means + spec_q.means
    width = sigma_span * max(spec_p.stds + spec_q.stds)
    lo, hi = min(means) - width, max(means) + width
    if not hi > lo:
        raise DistributionError("degenerate grid: zero-width span")
    return np.linspace(lo, hi, int(grid_points))


def discretize_gmm(spec_p: GmmSpec, spec_q: GmmSpec, grid_points: int = DEFAULT_GRID_POINTS,
                   sigma_span: float = DEFAULT_SIGMA_SPAN
                   ) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """Evaluate two mixtures on a common grid and renormalize each to mass one.

    Components are truncated at ``sigma_span`` standard deviations from their
    mean, so a mode present in only one mixture yields atoms outside the other
    mixture's support (the dropped / invented mass is then visible as
    ``P(supp Q) < 1`` or ``Q(supp P) < 1``).
    """
    x = gmm_grid(spec_p, spec_q, grid_points, sigma_span)
    out = []
    for spec in (spec_p, spec_q):
        d = spec.density(x, sigma_span)
        total = d.sum()
        if not total > 0:
            raise DistributionError("mixture has no mass on the grid")
        out.append(DiscreteDistribution(d / total))
    return out[0], out[1]
