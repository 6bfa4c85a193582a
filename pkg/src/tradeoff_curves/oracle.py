"""Exponential-time reference computations.

Every closed-form path in the package has an independent check here that
enumerates all subsets of the support (so n is kept small), builds convex
envelopes from scratch, or samples soft selection functions.  None of these
functions sort atoms by likelihood ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .distributions import DistLike, _pair
from .lorenz import lorenz_curve, lorenz_eval
from .precision_recall import alpha_beta_direct, likelihood_ratio_sets
from .renyi import sup_ratio

MAX_ENUM = 20
MAX_LORENZ_ENUM = 16


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    closed_form: float
    oracle: float
    gap: float
    witness: tuple = field(default=(), repr=False)
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.gap <= self.tolerance

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        return (f"{status} {self.quantity:<28} closed={self.closed_form!r} "
                f"oracle={self.oracle!r} gap={self.gap:.3e} tol={self.tolerance:.1e}")


def _gap(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else math.inf
    return abs(a - b)


def subset_sums(w: np.ndarray) -> np.ndarray:
    """Masses of all 2**n subsets; entry ``k`` is the subset with bitmask ``k``."""
    sums = np.zeros(1)
    for x in w:
        sums = np.concatenate((sums, sums + x))
    return sums


def _bits(k: int, n: int) -> tuple[bool, ...]:
    return tuple(bool((k >> i) & 1) for i in range(n))


def _check_n(n: int, limit: int) -> None:
    if n > limit:
        raise OracleError(f"support of size {n} is too large to enumerate (max {limit})")


def oracle_alpha(p: DistLike, q: DistLike, lam: float) -> OracleReport:
    """Precision as the minimum over all subsets of ``lam (1 - P(A)) + Q(A)``.

    Ties go to the lowest bitmask, so witnesses are reproducible.
    """
    pw, qw = _pair(p, q)
    _check_n(pw.size, MAX_ENUM)
    vals = lam * (1.0 - subset_sums(pw)) + subset_sums(qw)
    k = int(np.argmin(vals))
    closed = float(alpha_beta_direct(pw, qw, [lam])[0][0])
    return OracleReport("alpha", closed, float(vals[k]), _gap(closed, float(vals[k])),
                        _bits(k, pw.size), tolerance=1e-12 * max(1, pw.size))


def oracle_sup_ratio(mu: DistLike, nu: DistLike) -> OracleReport:
    """``max mu(A) / nu(A)`` over nonempty subsets, with 0/0 = 0 and x/0 = inf."""
    m, n = _pair(mu, nu)
    _check_n(m.size, MAX_ENUM)
    ms, ns = subset_sums(m)[1:], subset_sums(n)[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(ns > 0, ms / np.where(ns > 0, ns, 1.0), np.where(ms > 0, np.inf, 0.0))
    k = int(np.argmax(r))
    closed = sup_ratio(m, n)
    return OracleReport("sup_ratio", closed, float(r[k]), _gap(closed, float(r[k])),
                        _bits(k + 1, m.size), tolerance=1e-12)


def lower_hull(points: np.ndarray) -> np.ndarray:
    """Lower convex hull (monotone chain) of 2-D points, left to right.

    Only the lowest point of each abscissa is kept, so the result is a graph.
    """
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]
    first = np.concatenate(([True], pts[1:, 0] != pts[:-1, 0]))
    hull: list[tuple[float, float]] = []
    for x, y in pts[first].tolist():
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    return np.array(hull)


def lorenz_envelope(p: DistLike, q: DistLike) -> np.ndarray:
    """Lower envelope of ``{(P(A), Q(A))}`` over all subsets, as hull vertices."""
    pw, qw = _pair(p, q)
    _check_n(pw.size, MAX_LORENZ_ENUM)
    pts = np.column_stack((subset_sums(pw), subset_sums(qw)))
    return lower_hull(pts)


def _eval_envelope(hull: np.ndarray, t: float) -> float:
    # least Q-mass among envelope points capturing at least t of P
    xs, ys = hull[:, 0], hull[:, 1]
    if xs[-1] < t <= xs[-1] + 1e-12:
        t = float(xs[-1])
    vals = [float(np.interp(t, xs, ys))] if t <= xs[-1] else []
    vals += ys[xs >= t].tolist()
    return min(vals) if vals else math.inf


def oracle_lorenz(p: DistLike, q: DistLike, t) -> list[OracleReport] | OracleReport:
    """Lorenz value from the convexified indicator diagram; ``t`` scalar or array."""
    pw, qw = _pair(p, q)
    hull = lorenz_envelope(pw, qw)
    curve = lorenz_curve(pw, qw)
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = []
    for tk in ts:
        o = _eval_envelope(hull, float(tk))
        c = lorenz_eval(curve, min(1.0, float(tk)))
        out.append(OracleReport(f"lorenz(t={tk:.4g})", c, o, _gap(c, o), tolerance=1e-9))
    return out[0] if np.ndim(t) == 0 else out


def oracle_soft_f_domination(p: DistLike, q: DistLike, lam: float, trials: int = 1000,
                             seed: int = 0) -> OracleReport:
    """Random soft selections never beat the precision at ``lam``.

    The likelihood-ratio indicator is included as the first trial, so the
    sampled minimum should equal the precision and ``gap`` is their distance.
    """
    pw, qw = _pair(p, q)
    rng = np.random.default_rng(seed)
    f = rng.random((trials, pw.size))
    f[0] = likelihood_ratio_sets(pw, qw, [lam])[0]
    vals = lam * (1.0 - f @ pw) + f @ qw
    k = int(np.argmin(vals))
    closed = float(alpha_beta_direct(pw, qw, [lam])[0][0])
    return OracleReport("soft_f_domination", closed, float(vals[k]),
                        _gap(closed, float(vals[k])), tuple(f[k].tolist()), tolerance=1e-12)


# random instances -----------------------------------------------------------

def random_pair(rng: np.random.Generator, n: int, zero_frac: float = 0.1,
                concentration: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Dirichlet pair with about ``zero_frac`` of atoms zeroed in one marginal."""
    p = rng.dirichlet(np.full(n, concentration))
    q = rng.dirichlet(np.full(n, concentration))
    zero = rng.random(n) < zero_frac
    target = p if rng.random() < 0.5 else q
    if zero.any() and not zero.all():
        target[zero] = 0.0
        target /= target.sum()
    return p, q


def fixture_pairs(n: int) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Degenerate geometries: identical, singular, one-atom overlap."""
    out = []
    u = np.full(n, 1.0 / n)
    out.append(("identical", u, u.copy()))
    if n >= 2:
        h = n // 2
        p = np.zeros(n); p[:h] = 1.0 / h
        q = np.zeros(n); q[h:] = 1.0 / (n - h)
        out.append(("singular", p, q))
    if n >= 3:
        p = np.zeros(n); p[:2] = 0.5
        q = np.zeros(n); q[1:] = 1.0 / (n - 1)
        out.append(("one-atom-overlap", p, q))
    return out


def instance_stream(seed: int, count: int, min_n: int = 2, max_n: int = 12
                    ) -> Iterator[tuple[str, np.ndarray, np.ndarray]]:
    """Fixtures for every size first, then random Dirichlet pairs up to ``count``."""
    rng = np.random.default_rng(seed)
    emitted = 0
    for n in range(min_n, max_n + 1):
        for name, p, q in fixture_pairs(n):
            if emitted >= count:
                return
            yield f"{name}[n={n}]", p, q
            emitted += 1
    while emitted < count:
        n = int(rng.integers(min_n, max_n + 1))
        p, q = random_pair(rng, n)
        yield f"random[n={n}]", p, q
        emitted += 1


def _random_common_mu(rng: np.random.Generator, p: np.ndarray, q: np.ndarray) -> np.ndarray | None:
    common = (p > 0) & (q > 0)
    if not common.any():
        return None
    mu = np.zeros_like(p)
    mu[common] = rng.dirichlet(np.ones(int(common.sum())))
    return mu


ORACLE_LAMBDAS = (0.1, 0.5, 1.0, 2.0, 10.0)
ORACLE_TS = tuple(np.linspace(0.0, 1.0, 11).tolist())


def check_instance(p: np.ndarray, q: np.ndarray, rng: np.random.Generator,
                   lambdas=ORACLE_LAMBDAS, ts=ORACLE_TS) -> list[OracleReport]:
    reports = [oracle_alpha(p, q, lam) for lam in lambdas]
    reports.append(oracle_sup_ratio(p, q))
    reports.append(oracle_sup_ratio(q, p))
    mu = _random_common_mu(rng, p, q)
    if mu is not None:
        reports.append(oracle_sup_ratio(mu, q))
        reports.append(oracle_sup_ratio(mu, p))
    reports.extend(oracle_lorenz(p, q, np.asarray(ts)))
    reports.append(oracle_soft_f_domination(p, q, 1.0, trials=64, seed=int(rng.integers(2**31))))
    return reports


def run_oracle_suite(seed: int = 0, count: int = 1000, max_n: int = 12) -> Iterator[tuple[str, OracleReport]]:
    """Yield ``(instance label, report)`` for the whole randomized suite."""
    rng = np.random.default_rng(seed + 1)
    for label, p, q in instance_stream(seed, count, max_n=max_n):
        for rep in check_instance(p, q, rng):
            yield label, rep
