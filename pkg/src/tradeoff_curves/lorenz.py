"""Lorenz curves (Neyman-Pearson ordering) and their ROC reflection.

The Lorenz curve ``F(t)`` is the least Q-mass a soft selection ``0 <= f <= 1``
can carry while capturing at least ``t`` of P's mass.  For finite supports it
is piecewise linear: sort the atoms of ``supp P`` by ``q_i / p_i`` and
accumulate.  Atoms outside ``supp P`` never help and are left out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import DistLike, _pair

SLOPE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Exact piecewise-linear Lorenz curve.

    ``t`` and ``F`` are breakpoint coordinates starting at (0, 0) and ending at
    ``t = 1``; ``slopes[k]`` is the slope on ``[t[k], t[k+1]]``.  ``tail[k]`` is
    the P-mass beyond breakpoint k (``1 - t[k]``, but summed from the right so
    it stays accurate when multiplied by very steep slopes).
    """

    t: np.ndarray
    F: np.ndarray
    slopes: np.ndarray
    tail: np.ndarray | None = None

    def __post_init__(self):
        t = np.array(self.t, dtype=np.float64)
        F = np.array(self.F, dtype=np.float64)
        s = np.array(self.slopes, dtype=np.float64)
        tail = 1.0 - t if self.tail is None else np.array(self.tail, dtype=np.float64)
        if tail.shape != t.shape:
            raise ValueError("tail masses must match the breakpoints")
        if t.ndim != 1 or t.shape != F.shape or s.size != t.size - 1:
            raise ValueError("need matching breakpoint arrays and one slope per segment")
        if t.size < 2 or t[0] != 0 or F[0] != 0:
            raise ValueError("Lorenz curve must start at (0, 0) and have a segment")
        if np.any(np.diff(t) < 0):
            raise ValueError("breakpoint abscissas must be nondecreasing")
        if np.any(s < -SLOPE_TOL) or np.any(np.diff(s) < -SLOPE_TOL):
            raise ValueError("Lorenz curve must be nondecreasing and convex")
        for arr in (t, F, s, tail):
            arr.setflags(write=False)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "slopes", s)

    @classmethod
    def from_breakpoints(cls, t, F) -> "LorenzCurve":
        t = np.asarray(t, dtype=np.float64)
        F = np.asarray(F, dtype=np.float64)
        if t.size < 2 or t.shape != F.shape or np.any(np.diff(t) <= 0):
            raise ValueError("need at least two breakpoints with strictly increasing t")
        return cls(t, F, np.diff(F) / np.diff(t))

    @property
    def breakpoints(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.F.tolist()))

    def __call__(self, t):
        return lorenz_eval(self, t)


def lorenz_curve(p: DistLike, q: DistLike) -> LorenzCurve:
    pw, qw = _pair(p, q)
    idx = np.flatnonzero(pw > 0)
    r = qw[idx] / pw[idx]
    order = np.argsort(r, kind="stable")
    idx, r = idx[order], r[order]
    # merge equal-ratio atoms into one segment
    starts = np.flatnonzero(np.concatenate(([True], r[1:] != r[:-1])))
    dp = np.add.reduceat(pw[idx], starts)
    dq = np.add.reduceat(qw[idx], starts)
    t = np.concatenate(([0.0], np.cumsum(dp)))
    F = np.concatenate(([0.0], np.cumsum(dq)))
    tail = np.concatenate((np.cumsum(dp[::-1])[::-1], [0.0]))
    if abs(t[-1] - 1.0) < 1e-9:
        t[-1] = 1.0
    return LorenzCurve(t, F, r[starts], tail)


def _check_t(t):
    arr = np.asarray(t, dtype=np.float64)
    if np.any(np.isnan(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    return arr


def lorenz_eval(curve: LorenzCurve, t):
    """Piecewise-linear evaluation; scalar in, float out."""
    arr = _check_t(t)
    out = np.interp(arr, curve.t, curve.F)
    return float(out) if np.ndim(t) == 0 else out


def lorenz_subdifferential(curve: LorenzCurve, t: float, atol: float = 1e-12) -> tuple[float, float]:
    """Interval ``[left slope, right slope]`` of F at ``t``.

    F is extended by 0 for ``t < 0`` and by ``+inf`` for ``t > 1`` (no soft set
    captures more than all of P), so ``t = 0`` yields ``[0, s_0]`` and ``t = 1``
    yields ``[s_last, inf]``.  Breakpoints within ``atol`` of ``t`` count as hit.
    """
    _check_t(t)
    ts, s = curve.t, curve.slopes
    near = np.flatnonzero(np.abs(ts - t) <= atol)
    if near.size:
        first, last = int(near[0]), int(near[-1])
        left = 0.0 if first == 0 else float(s[first - 1])
        right = math.inf if last == ts.size - 1 else float(s[last])
        return left, right
    k = int(np.searchsorted(ts, t)) - 1
    return float(s[k]), float(s[k])


def reflect(points):
    """Swap coordinates of every point (reflection across the main diagonal)."""
    return [(y, x) for x, y in points]


def roc_curve(curve: LorenzCurve) -> list[tuple[float, float]]:
    """ROC breakpoints: the Lorenz breakpoints mirrored as ``(F, t)``."""
    return reflect(curve.breakpoints)
