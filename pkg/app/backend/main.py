from fastapi import FastAPI, HTTPException
from pydantic import BaseModel
from typing import Any, Dict, List, Optional
import pandas as pd
from sqlalchemy import text

from config import (HEIS_GRID, HEIS_L, HEIS_LMAX, HEIS_NLAMBDA, RANDOM_SEED, RESULTS_DIR,
                    TODA_DT, TODA_T, configure_logging)
from algebra.errors import GenericityError
from algebra.matrix import RatMatrix
from algebra.rational import format_rational
from analytics.reports import drift_table, load_summary
from db.database import get_engine, refresh_from_csvs
from lie.decomposition import build_decomposition
from model.chops import HessenbergPoint, casimir_vector
from model.dpop import dp_report
from model.heisenberg import TEST_FUNCTIONS, check_grid, plancherel_isometry_demo, zero_function
from model.orbits import build_cross_section, kappa_from_casimirs
from model.run_pipeline import SUITES, run_full, run_suite
from model.sampling import trial_rng
from model.toda import random_flow_start, toda_integrate

configure_logging()
app = FastAPI(title="Borel Orbit Toolkit")

# ---------------- Models ----------------
class VerifyRun(BaseModel):
    suite: str
    n: int
    trials: Optional[int] = None
    seed: int = RANDOM_SEED

class CrossSection(BaseModel):
    x: Optional[Dict[str, Any]] = None      # RatMatrix JSON
    kappa: Optional[List[str]] = None
    n: Optional[int] = None

class TodaRun(BaseModel):
    n: int = 4
    t: float = TODA_T
    dt: float = TODA_DT
    seed: int = RANDOM_SEED
    x0: Optional[Dict[str, Any]] = None
    power: int = 2

class HeisenbergRun(BaseModel):
    grid: int = HEIS_GRID
    L: float = HEIS_L
    lmax: float = HEIS_LMAX
    nlambda: int = HEIS_NLAMBDA
    function: int = 0
    zero: bool = False

def _bad_request(e: Exception):
    raise HTTPException(status_code=400, detail=str(e))

# ---------------- App startup ----------------
@app.on_event("startup")
def _startup_refresh():
    try:
        refresh_from_csvs()
    except Exception:
        pass

# ---------------- Health ----------------
@app.get("/health")
def health():
    return {"ok": True}

# ---------------- Operations ----------------
@app.get("/describe/{n}")
def api_describe(n: int):
    try:
        return build_decomposition(n).to_json()
    except ValueError as e:
        _bad_request(e)

@app.post("/verify")
def api_verify(body: VerifyRun):
    try:
        return run_suite(body.suite, body.n, body.trials, body.seed)
    except ValueError as e:
        _bad_request(e)

@app.get("/dp-symbol/{n}")
def api_dp_symbol(n: int):
    try:
        return dp_report(n)
    except ValueError as e:
        _bad_request(e)

@app.post("/cross-section")
def api_cross_section(body: CrossSection):
    try:
        if body.x is not None:
            X = HessenbergPoint(RatMatrix.from_json(body.x))
            point = build_cross_section(kappa_from_casimirs(X), X.n)
        elif body.kappa is not None and body.n is not None:
            point = build_cross_section(body.kappa, body.n)
        else:
            raise ValueError("give x, or kappa with n")
    except ValueError as e:
        _bad_request(e)
    out = point.to_json()
    out["casimirs"] = [format_rational(c) for c in casimir_vector(point.f)]
    return out

@app.post("/toda")
def api_toda(body: TodaRun):
    try:
        X0 = (RatMatrix.from_json(body.x0).to_numpy() if body.x0 is not None
              else random_flow_start(trial_rng(body.seed), body.n))
        run = toda_integrate(X0, body.t, body.dt, power=body.power)
    except GenericityError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except ValueError as e:
        _bad_request(e)
    run.frame.to_csv(RESULTS_DIR / "toda_series.csv", index=False)
    drift = drift_table(run.frame)
    drift.to_csv(RESULTS_DIR / "toda_drift.csv", index=False)
    refresh_from_csvs()
    return {**run.summary(), "drift": drift.to_dict(orient="records")}

@app.post("/heisenberg")
def api_heisenberg(body: HeisenbergRun):
    try:
        check_grid(body.grid)
        f = zero_function() if body.zero else TEST_FUNCTIONS[body.function]
        return plancherel_isometry_demo(f, body.grid, body.L, body.lmax, body.nlambda)
    except (ValueError, IndexError) as e:
        _bad_request(e)

# ---------------- Sweep and stored results ----------------
@app.post("/run/full")
def api_run_full(seed: int = RANDOM_SEED):
    run_full(seed)
    return load_summary()

@app.get("/summary")
def api_summary():
    return load_summary()

@app.get("/suites")
def api_suites():
    return sorted(SUITES)

def safe_query(q: str, params: dict = None):
    try:
        df = pd.read_sql(text(q), get_engine(), params=params or {})
        return df.to_dict(orient="records")
    except Exception as e:
        return {"error": str(e), "records": []}

@app.get("/results/suites")
def results_suites(suite: Optional[str] = None, failed_only: bool = False):
    q = "SELECT suite, n, trials, checks, failures, passed FROM suite_reports"
    where, params = [], {}
    if suite:
        where.append("suite = :suite")
        params["suite"] = suite
    if failed_only:
        where.append("failures > 0")
    if where:
        q += " WHERE " + " AND ".join(where)
    q += " ORDER BY suite, n;"
    return safe_query(q, params)
