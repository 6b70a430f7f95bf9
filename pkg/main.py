# main.py
"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a mathematical failure was detected,
2 usage or input error.
"""
from __future__ import annotations
import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional

import numpy as np

from config import (HEIS_GRID, HEIS_L, HEIS_LMAX, HEIS_NLAMBDA, HEIS_RATIO_TOL, RANDOM_SEED,
                    RESULTS_DIR, TODA_DRIFT_TOL, TODA_DT, TODA_T, configure_logging)
from algebra.errors import GenericityError
from algebra.matrix import RatMatrix
from algebra.rational import format_rational, parse_rational
from lie.decomposition import build_decomposition

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
VERIFY_SUITES = ("semiinv", "involutivity", "casimir", "pukanszky", "dp", "ninv")


def _json_default(x: Any):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def emit(report: dict, out: Optional[str] = None):
    text = json.dumps(report, sort_keys=True, indent=2, default=_json_default)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _read_matrix(path: str) -> RatMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read matrix file {path}: {e}") from e
    return RatMatrix.from_json(data)


# ---------------- commands ----------------
def cmd_describe(args) -> int:
    emit(build_decomposition(args.n).to_json(), args.out)
    return EXIT_PASS


def cmd_verify(args) -> int:
    from model.run_pipeline import run_suite
    report = run_suite(args.suite, args.n, args.trials, args.seed)
    emit(report, args.out)
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def cmd_toda(args) -> int:
    from analytics.reports import drift_table
    from model.sampling import trial_rng
    from model.toda import random_flow_start, toda_integrate

    if args.dt <= 0:
        raise ValueError("--dt must be positive")
    if args.x0:
        X0 = _read_matrix(args.x0).to_numpy()
    else:
        X0 = random_flow_start(trial_rng(args.seed), args.n)
    run = toda_integrate(X0, args.t, args.dt, power=args.power)
    out = Path(args.out) if args.out else RESULTS_DIR / "toda_series.csv"
    run.frame.to_csv(out, index=False)
    drift_table(run.frame).to_csv(RESULTS_DIR / "toda_drift.csv", index=False)
    summary = {**run.summary(), "seed": args.seed, "dt": args.dt, "T": args.t,
               "csv": str(out), "tolerance": args.tol, "passed": run.worst_drift <= args.tol}
    emit(summary)
    return EXIT_PASS if summary["passed"] else EXIT_FAIL


def cmd_cross_section(args) -> int:
    from model.chops import HessenbergPoint, casimir_vector
    from model.orbits import build_cross_section, kappa_from_casimirs

    if args.x:
        X = HessenbergPoint(_read_matrix(args.x))
        kappa = kappa_from_casimirs(X)
        n = X.n
        casimirs = casimir_vector(X)
    else:
        if not args.kappa or args.n is None:
            raise ValueError("give --x FILE, or --kappa with --n")
        n = args.n
        kappa = [parse_rational(k) for k in args.kappa.split(",")]
        casimirs = None
    point = build_cross_section(kappa, n)
    report = point.to_json()
    report["casimirs"] = [format_rational(c) for c in casimir_vector(point.f)]
    if casimirs is not None:
        report["matches_input"] = tuple(casimir_vector(point.f)) == tuple(casimirs)
    emit(report, args.out)
    return EXIT_PASS if report.get("matches_input", True) else EXIT_FAIL


def cmd_dp_symbol(args) -> int:
    from model.dpop import dp_report
    report = dp_report(args.n)
    emit(report, args.out)
    return EXIT_PASS if all(report["identity_checks"].values()) else EXIT_FAIL


def cmd_heisenberg(args) -> int:
    from model.heisenberg import TEST_FUNCTIONS, check_grid, plancherel_isometry_demo, zero_function

    check_grid(args.grid)
    f = zero_function() if args.zero else TEST_FUNCTIONS[args.function]
    report = plancherel_isometry_demo(f, args.grid, args.L, args.lmax, args.nlambda)
    emit(report, args.out)
    if report["ratio"] is None:
        return EXIT_PASS if report["lhs"] == report["rhs"] == 0 else EXIT_FAIL
    return EXIT_PASS if abs(report["ratio"] - 1) <= args.tol else EXIT_FAIL


def cmd_sweep(args) -> int:
    from model.run_pipeline import run_full
    df = run_full(args.seed)
    emit({"runs": len(df), "failed": df.loc[~df["passed"], ["suite", "n"]].to_dict(orient="records")},
         args.out)
    return EXIT_PASS if bool(df["passed"].all()) else EXIT_FAIL


# ---------------- parser ----------------
def _size(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="borel-orbits",
        description="Exact checks on the Lie-Poisson geometry of the Borel subgroup of GL(n, R).",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    ap.add_argument("--log-level", default="WARNING", help="logging level for diagnostics on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_required=True):
        p.add_argument("--n", type=_size, required=n_required, help="matrix size")
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("describe", help="dump the index-level decomposition for size n")
    common(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=VERIFY_SUITES)
    common(p)
    p.add_argument("--trials", type=int, default=None, help="random trials (suite default if omitted)")
    p.add_argument("--seed", type=int, default=RANDOM_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("toda", help="integrate the full Kostant-Toda flow and track drift")
    common(p, n_required=False)
    p.set_defaults(n=4)
    p.add_argument("--t", type=float, default=TODA_T, help="final time T")
    p.add_argument("--dt", type=float, default=TODA_DT, help="RK4 step")
    p.add_argument("--power", type=int, default=2, help="flow of (1/m) Tr X^m")
    p.add_argument("--x0", help="JSON matrix file for the start point")
    p.add_argument("--random", action="store_true", help="random start from --seed (default without --x0)")
    p.add_argument("--seed", type=int, default=RANDOM_SEED)
    p.add_argument("--tol", type=float, default=TODA_DRIFT_TOL, help="max relative drift allowed")
    p.set_defaults(func=cmd_toda)

    p = sub.add_parser("cross-section", help="κ and f(κ) for a point, or f(κ) for given κ")
    common(p, n_required=False)
    p.add_argument("--x", help="JSON matrix file of a generic Hessenberg point")
    p.add_argument("--kappa", help='comma-separated rationals, e.g. "1,-2/3"')
    p.set_defaults(func=cmd_cross_section)

    p = sub.add_parser("dp-symbol", help="exponents and degree of the Dixmier-Pukanszky symbol")
    common(p)
    p.set_defaults(func=cmd_dp_symbol)

    p = sub.add_parser("heisenberg", help="Plancherel isometry demo on the n = 3 Heisenberg group")
    p.add_argument("--grid", type=int, default=HEIS_GRID, help="points per axis, a power of two")
    p.add_argument("--L", type=float, default=HEIS_L, help="half-width of the grid")
    p.add_argument("--lmax", type=float, default=HEIS_LMAX, help="λ cut-off")
    p.add_argument("--nlambda", type=int, default=HEIS_NLAMBDA, help="λ quadrature intervals")
    p.add_argument("--function", type=int, choices=(0, 1, 2), default=0, help="which Gaussian test function")
    p.add_argument("--zero", action="store_true", help="use f = 0")
    p.add_argument("--tol", type=float, default=HEIS_RATIO_TOL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_heisenberg)

    p = sub.add_parser("sweep", help="run every suite at the acceptance sizes and store results")
    p.add_argument("--seed", type=int, default=RANDOM_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_USAGE
    configure_logging(args.log_level)
    try:
        return args.func(args)
    except GenericityError as e:
        if e.time:
            logger.error("flow failure: %s", e)
            return EXIT_FAIL
        logger.error("input error: %s", e)
        return EXIT_USAGE
    except (ValueError, TypeError, KeyError) as e:
        logger.error("input error: %s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
