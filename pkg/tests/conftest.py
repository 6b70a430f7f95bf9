# tests/conftest.py
import pytest


@pytest.fixture
def results_dir(tmp_path, monkeypatch):
    """Point every module that writes results or the warehouse at a temp dir."""
    import analytics.reports
    import app.backend.main
    import db.database
    import main
    import model.run_pipeline

    out = tmp_path / "results"
    out.mkdir()
    for mod in (analytics.reports, app.backend.main, db.database, main, model.run_pipeline):
        monkeypatch.setattr(mod, "RESULTS_DIR", out)
    monkeypatch.setattr(db.database, "DB_PATH", tmp_path / "warehouse.db")
    monkeypatch.setattr(db.database, "_engine", None)
    return out
