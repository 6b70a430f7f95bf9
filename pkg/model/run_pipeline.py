# model/run_pipeline.py
import logging
from typing import Any, Callable, Dict, Optional

import numpy as np
import pandas as pd

from config import (DEFAULT_TRIALS, KAPPA_TRIALS, NINV_TRIALS, PUKANSZKY_TRIALS, RANDOM_SEED,
                    RESULTS_DIR, SEMIINV_TRIALS, SWEEP_CASIMIR_N, SWEEP_DP_N,
                    SWEEP_INVOLUTIVITY_N, SWEEP_PUKANSZKY_N, SWEEP_SEMIINV_N)
from algebra.rational import format_rational
from model.chops import n_invariance_check, semi_invariance_suite
from model.dpop import LambdaPoint, dp_modular_weight_check, dp_weight_check, pfaffian_consistency
from model.orbits import kappa_round_trip_check, pukanszky_suite
from model.poisson import casimir_suite, involutivity_suite, jacobi_check
from model.sampling import random_lambda, trial_rng

logger = logging.getLogger(__name__)


def _dp_suite(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """Integer identities, the exact modular weight and the Pfaffian cross-check."""
    report = dp_weight_check(n)
    weight = dp_modular_weight_check(n, trials, seed)
    pf_failures = []
    for trial in range(trials):
        lam = LambdaPoint(n, random_lambda(trial_rng(seed, trial), n // 2))
        pf = pfaffian_consistency(lam)
        if not (pf["square_matches_det"] and pf["matches_pfaffian_up_to_sign"]):
            pf_failures.append({"trial": trial, "lambda": [format_rational(x) for x in lam.lam]})
    report["trials"] = trials
    report["seed"] = seed
    report["checks"] += 3 * trials + trials
    report["failures"] = (report["failures"] + weight["failures"]
                          + [{"pfaffian": f} for f in pf_failures])
    return report


SUITES: Dict[str, Callable[[int, int, int], Dict[str, Any]]] = {
    "semiinv": semi_invariance_suite,
    "involutivity": involutivity_suite,
    "casimir": casimir_suite,
    "pukanszky": pukanszky_suite,
    "dp": _dp_suite,
    "ninv": n_invariance_check,
    "jacobi": jacobi_check,
    "kappa": kappa_round_trip_check,
}

SUITE_TRIALS = {"semiinv": SEMIINV_TRIALS, "ninv": NINV_TRIALS, "pukanszky": PUKANSZKY_TRIALS,
                "kappa": KAPPA_TRIALS}


def default_trials(name: str) -> int:
    return SUITE_TRIALS.get(name, DEFAULT_TRIALS)


def run_suite(name: str, n: int, trials: Optional[int] = None, seed: int = RANDOM_SEED) -> Dict[str, Any]:
    """Run one verification suite; the report's ``failures`` list is empty on success."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    if n < 2:
        raise ValueError("n must be at least 2")
    trials = default_trials(name) if trials is None else trials
    report = SUITES[name](n, trials, seed)
    report.setdefault("suite", name)
    report["passed"] = not report["failures"]
    return report


SWEEP = {
    "semiinv": SWEEP_SEMIINV_N,
    "ninv": SWEEP_SEMIINV_N,
    "involutivity": SWEEP_INVOLUTIVITY_N,
    "casimir": SWEEP_CASIMIR_N,
    "jacobi": range(2, 5),
    "pukanszky": SWEEP_PUKANSZKY_N,
    "kappa": range(2, 7),
    "dp": SWEEP_DP_N,
}


def run_full(seed: int = RANDOM_SEED) -> pd.DataFrame:
    """Acceptance sweep: every suite at its sizes, stored as CSV and in the warehouse."""
    from analytics.reports import build, suite_row
    from db.database import refresh_from_csvs

    rows = []
    for name, sizes in SWEEP.items():
        for n in sizes:
            report = run_suite(name, n, seed=seed)
            rows.append(suite_row(report))
            logger.info("%s n=%d: %s", name, n, "pass" if report["passed"] else "FAIL")
    reports = pd.DataFrame(rows)
    reports.to_csv(RESULTS_DIR / "suite_reports.csv", index=False)
    build()
    refresh_from_csvs()
    return reports


if __name__ == "__main__":
    from config import configure_logging
    configure_logging()
    df = run_full()
    print(df.to_string(index=False))
    raise SystemExit(0 if bool(np.all(df["passed"])) else 1)
