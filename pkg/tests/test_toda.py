# tests/test_toda.py
import numpy as np
import pytest

from algebra.errors import GenericityError
from config import TODA_DRIFT_TOL, TODA_MIN_ORDER_RATIO
from model.sampling import trial_rng
from model.toda import (check_hessenberg, drift_convergence, random_flow_start, rk4_step,
                        toda_integrate, vector_field)

FIXED = np.array([[1.0, 1.0], [0.0, -1.0]])


def test_fixed_point_does_not_move():
    assert np.allclose(vector_field(FIXED), 0.0)
    assert np.array_equal(rk4_step(FIXED, 0.1), FIXED)


def test_fixed_point_is_not_generic():
    with pytest.raises(GenericityError) as info:
        toda_integrate(FIXED, T=1.0, dt=0.01)
    assert info.value.r == 1
    assert info.value.time == 0.0


def test_rejects_bad_steps_and_starts():
    X0 = random_flow_start(trial_rng(0), 3)
    with pytest.raises(ValueError):
        toda_integrate(X0, T=1.0, dt=0.0)
    with pytest.raises(ValueError):
        toda_integrate(X0, T=-1.0, dt=0.1)
    with pytest.raises(ValueError):
        check_hessenberg(np.eye(3))


def test_short_run_keeps_shape_and_trace():
    X0 = random_flow_start(trial_rng(1), 4)
    run = toda_integrate(X0, T=1.0, dt=1e-2, record_every=5)
    X = run.final.X
    assert np.array_equal(np.triu(X, 1), np.eye(4, k=1))
    assert run.final.t == pytest.approx(1.0)
    assert run.max_drift["tr_x1"] < 1e-12
    assert {"t", "tr_x2", "drift_tr_x2"} <= set(run.frame.columns)
    assert run.frame["t"].iloc[-1] == pytest.approx(1.0)
    assert run.summary()["n"] == 4


def test_higher_hamiltonian_flow_conserves_family():
    X0 = random_flow_start(trial_rng(2), 4)
    run = toda_integrate(X0, T=1.0, dt=1e-3, power=3)
    assert run.worst_drift <= TODA_DRIFT_TOL


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5])
def test_long_run_drift(n):
    run = toda_integrate(random_flow_start(trial_rng(42), n), T=10.0, dt=1e-3)
    assert run.worst_drift <= TODA_DRIFT_TOL


@pytest.mark.slow
def test_rk4_order():
    report = drift_convergence(random_flow_start(trial_rng(42), 4))
    assert report["drift_half_dt"] < report["drift_dt"]
    assert report["ratio"] >= TODA_MIN_ORDER_RATIO


@pytest.mark.slow
def test_two_by_two_drift_is_tiny():
    run = toda_integrate(random_flow_start(trial_rng(1), 2), T=10.0, dt=1e-3)
    assert run.worst_drift <= 1e-10
