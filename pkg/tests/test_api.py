# tests/test_api.py
import pandas as pd
import pytest
from fastapi.testclient import TestClient

from app.backend.main import app


@pytest.fixture
def client(results_dir):
    with TestClient(app) as c:
        yield c


def test_health(client):
    assert client.get("/health").json() == {"ok": True}


def test_describe(client):
    assert client.get("/describe/7").json()["d"] == [5, 3, 1]
    assert client.get("/describe/1").status_code == 400


def test_verify(client):
    body = client.post("/verify", json={"suite": "casimir", "n": 3, "trials": 1}).json()
    assert body["passed"] is True
    assert client.post("/verify", json={"suite": "nope", "n": 3}).status_code == 400


def test_dp_symbol(client):
    body = client.get("/dp-symbol/4").json()
    assert body["alpha"] == [2, 1] and body["degree"] == 4


def test_cross_section(client):
    body = client.post("/cross-section", json={"kappa": ["1", "2"], "n": 3}).json()
    assert body["casimirs"] == ["4", "-2"]
    point = {"entries": [["1", "1", "0"], ["0", "2", "1"], ["1", "0", "1"]]}
    assert client.post("/cross-section", json={"x": point}).json()["kappa"] == ["1", "2"]
    assert client.post("/cross-section", json={}).status_code == 400
    assert client.post("/cross-section", json={"kappa": ["1"], "n": 4}).status_code == 400


def test_toda(client, results_dir):
    body = client.post("/toda", json={"n": 3, "t": 0.2, "dt": 0.01}).json()
    assert body["n"] == 3
    assert {d["observable"] for d in body["drift"]} >= {"tr_x1", "tr_x2"}
    assert (results_dir / "toda_series.csv").exists()
    fixed = {"entries": [["1", "1"], ["0", "-1"]]}
    assert client.post("/toda", json={"x0": fixed, "t": 0.1, "dt": 0.01}).status_code == 422
    assert client.post("/toda", json={"dt": 0}).status_code == 400


def test_heisenberg(client):
    body = client.post("/heisenberg", json={"zero": True, "grid": 64, "lmax": 4, "nlambda": 8}).json()
    assert body["lhs"] == body["rhs"] == 0
    assert client.post("/heisenberg", json={"grid": 32}).status_code == 400
    assert client.post("/heisenberg", json={"function": 7, "grid": 64}).status_code == 400


def test_stored_results(client, results_dir):
    assert client.get("/summary").json()["runs"] == 0
    assert "pukanszky" in client.get("/suites").json()
    pd.DataFrame([{"suite": "dp", "n": 4, "trials": 1, "checks": 9, "failures": 0, "passed": True},
                  {"suite": "ninv", "n": 5, "trials": 2, "checks": 12, "failures": 1, "passed": False}]
                 ).to_csv(results_dir / "suite_reports.csv", index=False)
    from db.database import refresh_from_csvs
    refresh_from_csvs()
    rows = client.get("/results/suites", params={"failed_only": True}).json()
    assert [(r["suite"], r["n"]) for r in rows] == [("ninv", 5)]
    assert len(client.get("/results/suites", params={"suite": "dp"}).json()) == 1
