"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 property or oracle violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as tio
from .adaptation import BoundViolation, DaInstance, bound_report
from .distributions import (DEFAULT_GRID_POINTS, DEFAULT_SIGMA_SPAN, DistributionError,
                            discretize_gmm)
from .duality import lorenz_points_from_pr, pr_from_lorenz
from .lorenz import lorenz_curve, roc_curve
from .oracle import OracleError, run_oracle_suite
from .precision_recall import DEFAULT_GRID_SIZE, default_lambda_grid, pr_curve
from .renyi import frontier_from_pr
from .scenarios import SCENARIO_NAMES, RunConfig, ScenarioError, get_scenario, run_scenario

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _input_args(ap: argparse.ArgumentParser) -> None:
    g = ap.add_argument_group("input")
    g.add_argument("--p", type=Path, help="paired distribution JSON, or P's marginal when --q is given")
    g.add_argument("--q", type=Path, help="Q's marginal (paired file column 'q' or {\"weights\": [...]})")
    g.add_argument("--gmm-p", type=Path, help="mixture JSON for P")
    g.add_argument("--gmm-q", type=Path, help="mixture JSON for Q")
    g.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS, help="mixture grid points")
    g.add_argument("--span", type=float, default=DEFAULT_SIGMA_SPAN, help="grid half-width in stds")


def _output_args(ap: argparse.ArgumentParser, formats=True) -> None:
    ap.add_argument("--out", type=Path, help="output directory (default: stdout)")
    if formats:
        ap.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tradeoff-curves",
                                 description="PR, Lorenz, ROC and Renyi-frontier curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, help_ in (("pr", "precision-recall curve"), ("lorenz", "Lorenz curve breakpoints"),
                        ("roc", "ROC curve breakpoints"), ("frontier", "infinite-order Renyi frontier")):
        sp = sub.add_parser(name, help=help_)
        _input_args(sp)
        sp.add_argument("--lambdas", type=int, default=DEFAULT_GRID_SIZE, help="slope grid size")
        _output_args(sp)

    sp = sub.add_parser("convert", help="PR <-> Lorenz through convex duality")
    sp.add_argument("--direction", choices=("pr-to-lorenz", "lorenz-to-pr"), required=True)
    sp.add_argument("--input", type=Path, required=True, help="pr.csv or lorenz.csv")
    sp.add_argument("--lambdas", type=int, default=DEFAULT_GRID_SIZE)
    _output_args(sp)

    sp = sub.add_parser("da-bound", help="domain-adaptation bounds for an error mask")
    _input_args(sp)
    sp.add_argument("--mask", type=Path, required=True, help='{"error_atoms": [indices]}')
    _output_args(sp, formats=False)

    sp = sub.add_parser("scenario", help="run a named scenario and write all curves")
    sp.add_argument("name", choices=SCENARIO_NAMES)
    sp.add_argument("--lambdas", type=int, default=DEFAULT_GRID_SIZE)
    sp.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS)
    sp.add_argument("--span", type=float, default=DEFAULT_SIGMA_SPAN)
    sp.add_argument("--mask", type=Path, help="optional error mask for the bound summary")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=Path, required=True)

    sp = sub.add_parser("verify", help="randomized brute-force oracle suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=1000)
    sp.add_argument("--max-n", type=int, default=12)
    sp.add_argument("--quiet", action="store_true", help="print failures and the tally only")
    return ap


def load_pair(args):
    if args.gmm_p or args.gmm_q:
        if not (args.gmm_p and args.gmm_q):
            raise DistributionError("--gmm-p and --gmm-q must be given together")
        return discretize_gmm(tio.parse_gmm(args.gmm_p), tio.parse_gmm(args.gmm_q),
                              args.grid, args.span)
    if args.p is None:
        raise DistributionError("need --p (paired file) or --gmm-p/--gmm-q")
    if args.q is None:
        return tio.parse_distribution(args.p)
    p, q = tio.load_marginal(args.p, "p"), tio.load_marginal(args.q, "q")
    if len(p) != len(q):
        raise DistributionError(f"--p has {len(p)} atoms, --q has {len(q)}")
    return p, q


def _emit(args, stem: str, header, rows) -> None:
    if args.format == "json":
        text = tio.json_text([dict(zip(header, r)) for r in rows])
        fname = f"{stem}.json"
    else:
        text = tio.csv_text(header, rows)
        fname = f"{stem}.csv"
    if args.out:
        tio.write_text(args.out / fname, text)
    else:
        sys.stdout.write(text)


def cmd_curves(args) -> int:
    p, q = load_pair(args)
    if args.command == "lorenz":
        _emit(args, "lorenz", tio.LORENZ_HEADER, lorenz_curve(p, q).breakpoints)
    elif args.command == "roc":
        _emit(args, "roc", tio.ROC_HEADER, roc_curve(lorenz_curve(p, q)))
    else:
        pr = pr_curve(p, q, default_lambda_grid(args.lambdas))
        if args.command == "pr":
            _emit(args, "pr", tio.PR_HEADER, pr.rows())
        else:
            _emit(args, "frontier", tio.FRONTIER_HEADER,
                  [(f.lam, f.pi, f.rho) for f in frontier_from_pr(pr)])
    return EXIT_OK


def cmd_convert(args) -> int:
    if args.direction == "pr-to-lorenz":
        pts = lorenz_points_from_pr(tio.read_pr_csv(args.input))
        _emit(args, "lorenz", tio.LORENZ_HEADER, pts)
    else:
        curve = tio.read_lorenz_csv(args.input)
        _emit(args, "pr", tio.PR_HEADER, pr_from_lorenz(curve, default_lambda_grid(args.lambdas)).rows())
    return EXIT_OK


def cmd_da_bound(args) -> int:
    p, q = load_pair(args)
    inst = DaInstance(p, q, tio.parse_mask(args.mask, len(p)))
    rep = bound_report(inst, strict=False)
    keys = ("eps_p", "eps_q", "bound_tv", "bound_lorenz", "bound_pr", "lambda_star",
            "bound_lambda_one", "bound_tv_clipped", "informative", "valid", "tv", "alpha_one")
    full = rep.to_dict()
    text = tio.json_text({k: full[k] for k in keys})
    if args.out:
        tio.write_text(args.out / "da_bound.json", text)
    else:
        sys.stdout.write(text)
    if not all(rep.valid.values()):
        raise BoundViolation("target error exceeds a bound")
    return EXIT_OK


def cmd_scenario(args) -> int:
    spec = get_scenario(args.name)
    cfg = RunConfig(lambdas=args.lambdas, grid_points=args.grid, sigma_span=args.span,
                    out_dir=args.out, seed=args.seed)
    mask = None
    if args.mask:
        # mask indices refer to the expanded support, whose size is known after expansion
        from .scenarios import expand
        p, _ = expand(spec, cfg)
        mask = tio.parse_mask(args.mask, len(p))
    res = run_scenario(spec, cfg, mask=mask)
    for key, ok in res.checks.items():
        print(f"{'ok  ' if ok else 'FAIL'} {key}")
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_verify(args) -> int:
    failures = total = 0
    for label, rep in run_oracle_suite(args.seed, args.instances, args.max_n):
        total += 1
        if not rep.passed:
            failures += 1
        if not args.quiet or not rep.passed:
            print(f"{label:<28} {rep.line()}")
    print(f"{total - failures}/{total} oracle checks passed (seed={args.seed})")
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


COMMANDS = {"pr": cmd_curves, "lorenz": cmd_curves, "roc": cmd_curves, "frontier": cmd_curves,
            "convert": cmd_convert, "da-bound": cmd_da_bound, "scenario": cmd_scenario,
            "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (BoundViolation, AssertionError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (DistributionError, ScenarioError, OracleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
