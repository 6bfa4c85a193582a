"""Named scenarios (identical, singular, mode dropping/invention/reweighting)
and the end-to-end run that computes, checks and emits every curve."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .adaptation import DaInstance, bound_report
from .distributions import (DEFAULT_GRID_POINTS, DEFAULT_SIGMA_SPAN, DiscreteDistribution,
                            discretize_gmm, total_variation)
from .duality import alpha_from_lorenz
from .io import (FRONTIER_HEADER, LORENZ_HEADER, PR_HEADER, ROC_HEADER, csv_text,
                 gmm_from_dict, json_text, write_text)
from .lorenz import LorenzCurve, lorenz_curve, roc_curve
from .oracle import oracle_alpha, oracle_lorenz
from .precision_recall import (DEFAULT_GRID_SIZE, PrCurve, alpha_beta_direct, augmented_grid,
                               default_lambda_grid, pr_curve)
from .renyi import FrontierPoint, frontier_from_pr

SCENARIO_NAMES = ("identical", "singular", "mode-drop", "mode-invent", "mode-reweight", "fig2-like")
SIGNATURE_MARGIN = 0.05
FULL_MASS = 0.999
COARSE_BINS = 12


class ScenarioError(ValueError):
    pass


class CheckFailure(AssertionError):
    """A scenario's computed curves failed a property or signature check."""


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    kind: str  # "discrete" or "gmm"
    p: object
    q: object


@dataclass
class RunConfig:
    lambdas: int = DEFAULT_GRID_SIZE
    grid_points: int = DEFAULT_GRID_POINTS
    sigma_span: float = DEFAULT_SIGMA_SPAN
    out_dir: Path | None = None
    seed: int = 0
    duality_tol: float = 1e-9
    oracle_tol: float = 1e-9
    identity_tol: float = 1e-12

    def __post_init__(self):
        if self.lambdas < 1 or self.grid_points < 2 or not self.sigma_span > 0:
            raise ValueError("grid sizes and sigma span must be positive")
        if min(self.duality_tol, self.oracle_tol, self.identity_tol) <= 0:
            raise ValueError("tolerances must be positive")


def load_scenarios() -> tuple[int, dict[str, ScenarioSpec]]:
    """Versioned scenario table shipped with the package."""
    text = resources.files("tradeoff_curves").joinpath("data/scenarios.json").read_text("utf-8")
    doc = json.loads(text)
    specs = {}
    for name, entry in doc["scenarios"].items():
        if entry["kind"] == "gmm":
            specs[name] = ScenarioSpec(name, "gmm", gmm_from_dict(entry["p"], name),
                                       gmm_from_dict(entry["q"], name))
        else:
            specs[name] = ScenarioSpec(name, "discrete", tuple(entry["p"]), tuple(entry["q"]))
    return int(doc["version"]), specs


def get_scenario(name: str) -> ScenarioSpec:
    _, specs = load_scenarios()
    try:
        return specs[name]
    except KeyError:
        raise ScenarioError(f"unknown scenario {name!r}; choose from {', '.join(specs)}") from None


def expand(spec: ScenarioSpec, cfg: RunConfig) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    if spec.kind == "gmm":
        return discretize_gmm(spec.p, spec.q, cfg.grid_points, cfg.sigma_span)
    return DiscreteDistribution(spec.p, name="P"), DiscreteDistribution(spec.q, name="Q")


def coarsen(w: np.ndarray, bins: int = COARSE_BINS) -> np.ndarray:
    """Sum contiguous runs of atoms into at most ``bins`` atoms."""
    if w.size <= bins:
        return w.copy()
    starts = np.array([c[0] for c in np.array_split(np.arange(w.size), bins)])
    return np.add.reduceat(w, starts)


@dataclass
class ScenarioResult:
    name: str
    p: DiscreteDistribution
    q: DiscreteDistribution
    pr: PrCurve
    lorenz: LorenzCurve
    roc: list
    frontier: list[FrontierPoint]
    summary: dict = field(default_factory=dict)

    @property
    def checks(self) -> dict:
        return self.summary["checks"]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _signature(name: str, pr: PrCurve, lorenz: LorenzCurve, endpoints: dict) -> dict:
    a_inf, b_0, a_1 = endpoints["alpha_inf"], endpoints["beta_0"], endpoints["alpha_1"]
    if name == "mode-drop":
        return {"recall_gap": b_0 < 1 - SIGNATURE_MARGIN}
    if name == "mode-invent":
        return {"precision_gap": a_inf < 1 - SIGNATURE_MARGIN}
    if name == "mode-reweight":
        return {"full_recall": b_0 > FULL_MASS, "full_precision": a_inf > FULL_MASS,
                "tradeoff": a_1 < FULL_MASS}
    if name == "identical":
        lams = pr.lambdas
        return {"green_pr": bool(np.all(pr.alphas == np.minimum(lams, 1.0))),
                "green_lorenz": bool(np.array_equal(lorenz.F, lorenz.t))}
    if name == "singular":
        return {"red_pr": bool(np.all(pr.alphas == 0) and np.all(pr.betas == 0)),
                "red_lorenz": bool(np.all(lorenz.F == 0))}
    if name == "fig2-like":
        return {"alpha_1_bracket": 0.36 <= a_1 <= 0.40}
    return {}


def run_scenario(spec: ScenarioSpec, cfg: RunConfig | None = None, mask=None) -> ScenarioResult:
    """Compute every curve for a scenario, run the cross-checks, build the summary.

    Files are written only when ``cfg.out_dir`` is set (see :func:`emit_curves`).
    """
    cfg = cfg or RunConfig()
    if spec.name not in SCENARIO_NAMES:
        raise ScenarioError(f"unknown scenario {spec.name!r}")
    version, _ = load_scenarios()
    p, q = expand(spec, cfg)
    pw, qw = p.weights, q.weights
    pr = pr_curve(p, q, default_lambda_grid(cfg.lambdas))
    lz = lorenz_curve(p, q)
    frontier = frontier_from_pr(pr)

    a_1 = float(alpha_beta_direct(p, q, [1.0])[0][0])
    tv = total_variation(p, q)
    endpoints = {"alpha_1": a_1, "alpha_inf": pr.points[-1].alpha, "beta_0": pr.points[0].beta}

    checks = {}
    checks["tv_identity"] = abs(tv - 2 * (1 - a_1)) <= cfg.identity_tol
    grid = augmented_grid(p, q, default_lambda_grid(cfg.lambdas))
    direct = alpha_beta_direct(p, q, grid)[0]
    via_lorenz = np.array([alpha_from_lorenz(lz, float(l)) for l in grid])
    checks["duality_round_trip"] = bool(np.max(np.abs(direct - via_lorenz)) <= cfg.duality_tol)
    checks["frontier_mapping"] = all(
        (math.isinf(f.pi) and pt.alpha == 0) or abs(math.exp(-f.pi) - pt.alpha) <= cfg.identity_tol
        for f, pt in zip(frontier, pr.points))
    cp, cq = coarsen(pw), coarsen(qw)
    gaps = [oracle_alpha(cp, cq, lam).gap for lam in (0.25, 0.5, 1.0, 2.0, 4.0)]
    gaps += [r.gap for r in oracle_lorenz(cp, cq, np.linspace(0, 1, 11))]
    checks["oracle_coarsened"] = max(gaps) <= cfg.oracle_tol
    for key, ok in _signature(spec.name, pr, lz, endpoints).items():
        checks[f"signature_{key}"] = bool(ok)

    summary = {
        "scenario": spec.name,
        "scenario_version": version,
        "n_atoms": len(p),
        "alpha_1": a_1,
        "tv": tv,
        "alpha_inf": endpoints["alpha_inf"],
        "beta_0": endpoints["beta_0"],
        "lorenz_F1": float(lz.F[-1]),
        "checks": {k: bool(v) for k, v in checks.items()},
    }
    if mask is not None:
        rep = bound_report(DaInstance(p, q, mask), strict=False)
        summary["da_bounds"] = rep.to_dict()
        checks_da = all(rep.valid.values())
        summary["checks"]["da_validity"] = bool(checks_da)
    res = ScenarioResult(spec.name, p, q, pr, lz, roc_curve(lz), frontier, summary)
    if cfg.out_dir is not None:
        emit_curves(res, cfg)
    return res


def curve_texts(res: ScenarioResult) -> dict[str, str]:
    return {
        "pr.csv": csv_text(PR_HEADER, res.pr.rows()),
        "lorenz.csv": csv_text(LORENZ_HEADER, res.lorenz.breakpoints),
        "roc.csv": csv_text(ROC_HEADER, res.roc),
        "frontier.csv": csv_text(FRONTIER_HEADER, [(f.lam, f.pi, f.rho) for f in res.frontier]),
        "summary.json": json_text(res.summary),
    }


def emit_curves(res: ScenarioResult, cfg: RunConfig) -> list[Path]:
    if cfg.out_dir is None:
        raise ValueError("no output directory configured")
    out = Path(cfg.out_dir)
    return [write_text(out / name, text) for name, text in curve_texts(res).items()]
