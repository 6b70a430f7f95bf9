# analytics/reports.py
from typing import Any, Dict

import pandas as pd

from config import RESULTS_DIR


def suite_row(report: Dict[str, Any]) -> Dict[str, Any]:
    """One summary row per suite run."""
    failures = report.get("failures", [])
    return {
        "suite": report.get("suite", ""),
        "n": int(report.get("n", 0)),
        "trials": int(report.get("trials", 0) or 0),
        "checks": int(report.get("checks", 0) or 0),
        "failures": len(failures),
        "passed": not failures,
    }


def build():
    reports = pd.read_csv(RESULTS_DIR / "suite_reports.csv")

    # Per-suite totals
    summary = (
        reports.groupby("suite")
        .agg(runs=("n", "count"), n_min=("n", "min"), n_max=("n", "max"),
             checks=("checks", "sum"), failures=("failures", "sum"))
        .reset_index()
    )
    summary["passed"] = summary["failures"] == 0
    summary.to_csv(RESULTS_DIR / "suite_summary.csv", index=False)
    return summary


def drift_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Max and final relative drift per observable of a Toda time series."""
    cols = [c for c in frame.columns if c.startswith("drift_")]
    out = pd.DataFrame({
        "observable": [c[len("drift_"):] for c in cols],
        "max_drift": [float(frame[c].max()) for c in cols],
        "final_drift": [float(frame[c].iloc[-1]) for c in cols],
    })
    return out.sort_values("max_drift", ascending=False).reset_index(drop=True)


def load_summary():
    """Suite summary as a dict, tolerant of missing result files."""
    out = {"suites": {}, "runs": 0, "failures": 0, "passed": False}
    try:
        summary = pd.read_csv(RESULTS_DIR / "suite_summary.csv")
    except Exception:
        return out
    for _, row in summary.iterrows():
        out["suites"][row["suite"]] = {
            "runs": int(row["runs"]),
            "n_range": [int(row["n_min"]), int(row["n_max"])],
            "checks": int(row["checks"]),
            "failures": int(row["failures"]),
        }
    out["runs"] = int(summary["runs"].sum())
    out["failures"] = int(summary["failures"].sum())
    out["passed"] = out["runs"] > 0 and out["failures"] == 0

    try:
        drift = pd.read_csv(RESULTS_DIR / "toda_drift.csv")
        out["toda_max_drift"] = float(drift["max_drift"].max())
    except Exception:
        pass
    return out


if __name__ == "__main__":
    build()
