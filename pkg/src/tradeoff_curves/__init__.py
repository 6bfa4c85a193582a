"""Trade-off curves for comparing two discrete distributions.

Precision-recall curves, Lorenz and ROC curves, and the infinite-order Renyi
divergence frontier, linked through convex duality, plus the domain-adaptation
bounds they induce.
"""

from .adaptation import (BoundReport, BoundViolation, DaInstance, bound_lorenz, bound_pr_optimal,
                         bound_report, bound_tv, source_target_errors)
from .distributions import (DiscreteDistribution, DistributionError, GmmSpec,
                            LikelihoodRatioProfile, discretize_gmm, measure_min, ratio_profile,
                            total_variation)
from .duality import (ConjugateCurve, alpha_from_lorenz, conjugate, golden_section_min,
                      lambda_from_t, legendre, lorenz_from_pr, pr_from_lorenz)
from .lorenz import LorenzCurve, lorenz_curve, lorenz_eval, lorenz_subdifferential, roc_curve
from .precision_recall import (PrCurve, PrPoint, default_lambda_grid, pr_curve, pr_point_direct,
                               pr_point_via_sets, prd_membership)
from .renyi import FrontierPoint, frontier_from_pr, pr_pair_for_mu, renyi_divergence, sup_ratio

__all__ = [
    "alpha_from_lorenz",
    "bound_lorenz",
    "bound_pr_optimal",
    "bound_report",
    "bound_tv",
    "BoundReport",
    "BoundViolation",
    "conjugate",
    "ConjugateCurve",
    "DaInstance",
    "default_lambda_grid",
    "DiscreteDistribution",
    "discretize_gmm",
    "DistributionError",
    "frontier_from_pr",
    "FrontierPoint",
    "GmmSpec",
    "golden_section_min",
    "lambda_from_t",
    "legendre",
    "LikelihoodRatioProfile",
    "lorenz_curve",
    "lorenz_eval",
    "lorenz_from_pr",
    "lorenz_subdifferential",
    "LorenzCurve",
    "measure_min",
    "pr_curve",
    "pr_from_lorenz",
    "pr_pair_for_mu",
    "pr_point_direct",
    "pr_point_via_sets",
    "PrCurve",
    "prd_membership",
    "PrPoint",
    "ratio_profile",
    "renyi_divergence",
    "roc_curve",
    "source_target_errors",
    "sup_ratio",
    "total_variation",
]

__version__ = "0.1.0"
