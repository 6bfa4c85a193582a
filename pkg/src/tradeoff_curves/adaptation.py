"""Domain-adaptation error bounds under covariate shift.

Labels are folded into a per-atom error mask (atoms where the classifier is
wrong), so source and target errors are the P- and Q-mass of that mask.  Three
upper bounds on the target error are compared:

* ``eps_P + TV(P, Q)`` (full-mass TV, so it can exceed one),
* ``1 - F(1 - eps_P)`` with F the Lorenz curve,
* ``min_lam lam eps_P + 1 - alpha_lam``, which equals the Lorenz bound.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .distributions import DiscreteDistribution, DistributionError, total_variation
from .duality import golden_section_min
from .lorenz import LorenzCurve, lorenz_curve, lorenz_eval
from .precision_recall import PrCurve, alpha_beta_direct, pr_curve, ratio_values

VALIDITY_TOL = 1e-9
THETA_TOL = 1e-8


class BoundViolation(AssertionError):
    """Target error exceeded a bound that should hold."""


@dataclass(frozen=True, eq=False)
class DaInstance:
    source: DiscreteDistribution
    target: DiscreteDistribution
    error_mask: np.ndarray

    def __post_init__(self):
        mask = np.array(self.error_mask, dtype=bool).ravel()
        if len(self.source) != len(self.target):
            raise DistributionError("source and target must share the support")
        if mask.size != len(self.source):
            raise DistributionError(f"mask has {mask.size} entries, support has {len(self.source)}")
        mask.setflags(write=False)
        object.__setattr__(self, "error_mask", mask)

    @classmethod
    def from_indices(cls, source, target, error_atoms) -> "DaInstance":
        mask = np.zeros(len(source), dtype=bool)
        idx = list(error_atoms)
        for i in idx:
            if not 0 <= i < len(source):
                raise DistributionError(f"error atom {i} outside support of size {len(source)}")
        mask[idx] = True
        return cls(source, target, mask)


def source_target_errors(inst: DaInstance) -> tuple[float, float]:
    return inst.source.mass(inst.error_mask), inst.target.mass(inst.error_mask)


def bound_tv(inst: DaInstance) -> float:
    """Raw ``eps_P + TV``; not clipped, so values above 1 stay visible."""
    eps_p, _ = source_target_errors(inst)
    return eps_p + total_variation(inst.source, inst.target)


def bound_lorenz(inst: DaInstance, curve: LorenzCurve | None = None) -> float:
    eps_p, _ = source_target_errors(inst)
    if curve is None:
        curve = lorenz_curve(inst.source, inst.target)
    return 1.0 - lorenz_eval(curve, min(1.0, max(0.0, 1.0 - eps_p)))


def bound_at_lambda(inst: DaInstance, lam: float) -> float:
    """``lam eps_P + 1 - alpha_lam`` with ``inf * 0 = 0``."""
    eps_p, _ = source_target_errors(inst)
    alpha = float(alpha_beta_direct(inst.source, inst.target, [lam])[0][0])
    if math.isinf(lam):
        return math.inf if eps_p > 0 else 1.0 - alpha
    return lam * eps_p + 1.0 - alpha


def bound_pr_optimal(inst: DaInstance, pr: PrCurve | None = None,
                     tol: float = THETA_TOL) -> tuple[float, float]:
    """Sharpest PR-parameterized bound and its slope ``lam*``.

    ``alpha_lam - lam eps_P`` is concave in ``lam``.  The best point of the PR
    grid seeds a bracket in ``theta = arctan(lam)``, golden-section search
    narrows it, and the atom ratios inside the final bracket (the kinks of the
    piecewise-linear objective) are tried as well, which makes the optimum exact.
    """
    p, q = inst.source.weights, inst.target.weights
    eps_p, _ = source_target_errors(inst)
    if pr is None:
        pr = pr_curve(p, q)
    lams = pr.lambdas
    alphas = pr.alphas
    with np.errstate(invalid="ignore"):
        obj = alphas - np.where(np.isinf(lams), np.inf if eps_p > 0 else 0.0, lams * eps_p)
    k = int(np.argmax(obj))
    if math.isinf(lams[k]):
        return bound_at_lambda(inst, math.inf), math.inf

    def neg_obj(theta: float) -> float:
        lam = math.tan(theta)
        return -(float(alpha_beta_direct(p, q, [lam])[0][0]) - lam * eps_p)

    th_lo = math.atan(lams[k - 1]) if k > 0 else 0.0
    th_hi = math.atan(lams[k + 1]) if k + 1 < lams.size else math.pi / 2
    th_hi = min(th_hi, math.nextafter(math.pi / 2, 0.0))
    res = golden_section_min(neg_obj, th_lo, th_hi, tol)

    # the maximizer is a kink (atom ratio) or lies on a plateau; try the kinks
    # inside the final bracket
    lo_lam, hi_lam = math.tan(res.lo), math.tan(res.hi)
    kinks = ratio_values(p, q)
    cands = np.concatenate(([lams[k], math.tan(res.x), lo_lam, hi_lam],
                            kinks[(kinks >= lo_lam) & (kinks <= hi_lam)]))
    a = alpha_beta_direct(p, q, cands)[0]
    vals = a - cands * eps_p
    j = int(np.argmax(vals))
    lam_star = float(cands[j])
    return lam_star * eps_p + 1.0 - float(a[j]), lam_star


@dataclass
class BoundReport:
    eps_p: float
    eps_q: float
    bound_tv: float
    bound_lorenz: float
    bound_pr: float
    lambda_star: float
    bound_lambda_one: float
    tv: float
    alpha_one: float
    informative: dict = field(default_factory=dict)
    valid: dict = field(default_factory=dict)

    @property
    def bound_tv_clipped(self) -> float:
        return min(1.0, self.bound_tv)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound_tv_clipped"] = self.bound_tv_clipped
        return d


def bound_report(inst: DaInstance, strict: bool = True) -> BoundReport:
    """All bounds side by side, with informativeness and validity flags.

    With ``strict`` a :class:`BoundViolation` is raised if the true target
    error exceeds any bound (beyond ``VALIDITY_TOL``).
    """
    eps_p, eps_q = source_target_errors(inst)
    b_tv = bound_tv(inst)
    b_lz = bound_lorenz(inst)
    b_pr, lam_star = bound_pr_optimal(inst)
    b_one = bound_at_lambda(inst, 1.0)
    bounds = {"bound_tv": b_tv, "bound_lorenz": b_lz, "bound_pr": b_pr, "bound_lambda_one": b_one}
    rep = BoundReport(
        eps_p=eps_p, eps_q=eps_q, bound_tv=b_tv, bound_lorenz=b_lz, bound_pr=b_pr,
        lambda_star=lam_star, bound_lambda_one=b_one,
        tv=total_variation(inst.source, inst.target),
        alpha_one=float(alpha_beta_direct(inst.source, inst.target, [1.0])[0][0]),
        informative={k: v < 1.0 for k, v in bounds.items()},
        valid={k: eps_q <= v + VALIDITY_TOL for k, v in bounds.items()},
    )
    if strict and not all(rep.valid.values()):
        bad = [k for k, ok in rep.valid.items() if not ok]
        raise BoundViolation(f"target error {eps_q!r} exceeds {', '.join(bad)}")
    return rep
