# db/database.py
from __future__ import annotations
import logging

import pandas as pd
from sqlalchemy import create_engine

from config import DB_PATH, RESULTS_DIR

logger = logging.getLogger(__name__)

_engine = None  # module-level cache

TABLES = ("suite_reports", "suite_summary", "toda_series", "toda_drift")

def get_engine():
    global _engine
    if _engine is None:
        _engine = create_engine(f"sqlite:///{DB_PATH}", future=True)
    return _engine

def _to_sql(df: pd.DataFrame, name: str):
    eng = get_engine()
    df.to_sql(name, eng, if_exists="replace", index=False)

def refresh_from_csvs():
    """(Re)load result CSVs into the SQLite warehouse. Call after a sweep or flow run."""
    loaded = []
    for name in TABLES:
        path = RESULTS_DIR / f"{name}.csv"
        if path.exists():
            _to_sql(pd.read_csv(path), name)
            loaded.append(name)
    _create_indexes(loaded)
    logger.info("loaded %d result tables into %s", len(loaded), DB_PATH)
    return loaded

def _create_indexes(loaded):
    eng = get_engine()
    with eng.begin() as con:
        for tbl, cols in [
            ("suite_reports", ["suite", "n"]),
            ("suite_summary", ["suite"]),
            ("toda_series", ["t"]),
        ]:
            if tbl not in loaded:
                continue
            for c in cols:
                con.exec_driver_sql(f"CREATE INDEX IF NOT EXISTS ix_{tbl}_{c} ON {tbl}({c});")
