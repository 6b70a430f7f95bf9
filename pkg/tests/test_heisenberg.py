# tests/test_heisenberg.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algebra.errors import DimensionMismatchError
from config import HEIS_RATIO_TOL
from model.heisenberg import (TEST_FUNCTIONS, FourierOperator, GridFunction, HeisenbergElement,
                              check_grid, fourier_side, gaussian, gaussian_function, grid_points,
                              group_commutator, group_mul, group_mul_matrix, group_norm_sq,
                              lambda_measure_scale, lambda_nodes, plancherel_constant,
                              plancherel_constant_fit,
                              plancherel_isometry_demo, schrodinger_apply, zero_function)

GRID, L = 128, 10.0
H = 2 * L / GRID
coords = st.floats(-3, 3, allow_nan=False)


def elements(d):
    vec = st.lists(coords, min_size=d, max_size=d)
    return st.builds(lambda q, p, c: HeisenbergElement(1, q, p, c), vec, vec, coords)


# ---------------- group law ----------------
@settings(max_examples=50)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d), elements(d))))
def test_group_law_matches_matrix_product(pair):
    x, y = pair
    fast, slow = group_mul(x, y), group_mul_matrix(x, y)
    assert np.allclose(fast.q, slow.q)
    assert np.allclose(fast.p, slow.p)
    assert fast.c == pytest.approx(slow.c, abs=1e-9)


def test_matrix_realization():
    g = HeisenbergElement(1, (2.0,), (3.0,), 5.0)
    M = g.to_matrix()
    assert g.n == 3
    assert np.allclose(M, [[1, 2, 5 + 3], [0, 1, 3], [0, 0, 1]])
    back = HeisenbergElement.from_matrix(M, 1)
    assert back.q == g.q and back.p == g.p and back.c == pytest.approx(g.c)


def test_commutator_is_central():
    q, p = (1.5, -2.0), (0.5, 4.0)
    x = HeisenbergElement(2, q, (0.0, 0.0))
    y = HeisenbergElement(2, (0.0, 0.0), p)
    comm = group_commutator(x, y)
    assert comm.q == (0.0, 0.0) and comm.p == (0.0, 0.0)
    assert comm.c == pytest.approx(float(np.dot(p, q)))


def test_center_commutes():
    z = HeisenbergElement.central(1, 2, 1.25)
    x = HeisenbergElement(1, (1.0, -1.0), (0.5, 2.0), 0.3)
    assert group_mul(z, x) == group_mul(x, z)
    assert group_mul(x, x.inverse()) == HeisenbergElement.identity(1, 2)


def test_layer_checks():
    with pytest.raises(ValueError):
        group_mul(HeisenbergElement.identity(1, 1), HeisenbergElement.identity(2, 1))
    with pytest.raises(DimensionMismatchError):
        group_mul(HeisenbergElement.identity(1, 1), HeisenbergElement.identity(1, 2))
    with pytest.raises(DimensionMismatchError):
        HeisenbergElement(1, (1.0, 2.0), (1.0,))
    with pytest.raises(DimensionMismatchError):
        HeisenbergElement.from_matrix(np.eye(3), 2)


# ---------------- Schrödinger representation ----------------
def test_grid_checks():
    check_grid(64)
    for bad in (32, 100):
        with pytest.raises(ValueError):
            check_grid(bad)
    x = grid_points(GRID, L)
    assert x[0] == -L and x[1] - x[0] == pytest.approx(H) and len(x) == GRID


def test_lambda_zero_rejected():
    f = gaussian(GRID, L)
    with pytest.raises(ValueError):
        schrodinger_apply(0.0, HeisenbergElement.identity(1, 1), f)
    with pytest.raises(DimensionMismatchError):
        schrodinger_apply(1.0, HeisenbergElement.identity(1, 2), f)


@pytest.mark.parametrize("lam", [0.3, -1.7, 5.0])
def test_unitary_on_compact_data(lam):
    f = gaussian(GRID, L, width=1.2)
    g = HeisenbergElement(1, (4 * H,), (0.9,), -0.4)
    assert schrodinger_apply(lam, g, f).norm() == pytest.approx(f.norm(), rel=1e-10)


@pytest.mark.parametrize("lam", [0.8, -2.5])
def test_homomorphism_on_grid_aligned_shifts(lam):
    f = gaussian(GRID, L, width=1.0, center=0.3)
    g1 = HeisenbergElement(1, (3 * H,), (0.7,), 0.2)
    g2 = HeisenbergElement(1, (-5 * H,), (-0.4,), 1.1)
    left = schrodinger_apply(lam, g1, schrodinger_apply(lam, g2, f))
    right = schrodinger_apply(lam, group_mul(g1, g2), f)
    assert np.allclose(left.samples, right.samples, atol=1e-10)


def test_shift_in_two_dimensions():
    f = gaussian(64, L, width=1.5, dim=2)
    g = HeisenbergElement(1, (2 * f.h, -f.h), (0.0, 0.0), 0.0)
    moved = schrodinger_apply(1.0, g, f)
    X, Y = f.mesh()
    expected = np.exp(-((X + 2 * f.h) ** 2 + (Y - f.h) ** 2) / (2 * 1.5 ** 2))
    assert np.allclose(moved.samples, expected, atol=1e-8)


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction(np.ones((4, 8)), L)
    with pytest.raises(ValueError):
        GridFunction(np.array([1.0, np.nan]), L)


# ---------------- Plancherel ----------------
def test_lambda_nodes_include_zero():
    lams = lambda_nodes(8.0, 160)
    assert len(lams) == 161
    assert np.isclose(lams, 0.0).any()
    with pytest.raises(ValueError):
        lambda_nodes(8.0, 1)


def test_zero_function():
    report = plancherel_isometry_demo(zero_function(), grid=64, lmax=4.0, nlambda=8)
    assert report["lhs"] == report["rhs"] == 0
    assert report["ratio"] is None


def test_group_norm_of_gaussian():
    f = gaussian_function(0.5, 2.0, 0.3)
    expected = np.pi ** 1.5 * 0.5 * 2.0 * 0.3
    assert group_norm_sq(f, grid=256, L=10.0) == pytest.approx(expected, rel=1e-9)


def test_both_sides_scale_quadratically():
    f = TEST_FUNCTIONS[0]
    kwargs = dict(grid=64, L=10.0, lmax=4.0, nlambda=8)
    assert fourier_side(f.scale(2), **kwargs) == pytest.approx(4 * fourier_side(f, **kwargs), rel=1e-12)
    assert group_norm_sq(f.scale(2), 64, 10.0) == pytest.approx(4 * group_norm_sq(f, 64, 10.0))


def test_operator_kernel_is_hermitian_for_real_even_data():
    op = FourierOperator(gaussian_function(0.5, 2.0, 0.3), grid=64, L=10.0, oversample=1)
    K = op.matrix(1.5)
    assert K.shape == (64, 64)
    assert np.allclose(K, K.conj().T, atol=1e-10)


def test_density_constant():
    assert plancherel_constant(1) == 2.0
    assert plancherel_constant(2) == 8.0


@pytest.mark.slow
@pytest.mark.parametrize("index", [0, 1, 2])
def test_plancherel_ratio(index):
    report = plancherel_isometry_demo(TEST_FUNCTIONS[index])
    assert abs(report["ratio"] - 1) <= HEIS_RATIO_TOL


@pytest.mark.slow
def test_fitted_constant_is_two():
    assert plancherel_constant_fit() == pytest.approx(2.0, rel=0.01)


@pytest.mark.parametrize("lam", [0.75, 1.5, -2.0])
def test_hs_norm_matches_closed_form(lam):
    # Gaussian factors of widths a, b, s: ‖f̂(λ)‖²_HS = 2π s² e^{-s²λ²} · a√π · 2π b√π / |λ|.
    a, b, s = 0.5, 2.0, 0.3
    op = FourierOperator(gaussian_function(a, b, s), grid=128, L=10.0, oversample=4)
    expected = (2 * np.pi * s ** 2 * np.exp(-(s * lam) ** 2)
                * a * np.sqrt(np.pi) * 2 * np.pi * b * np.sqrt(np.pi) / abs(lam))
    assert op.hs_norm_sq(lam) == pytest.approx(expected, rel=1e-5)


def test_raw_normalization_is_two_pi_squared():
    # the λ integral alone, with no density constant, gives (2π)² ‖f‖²
    f = gaussian_function(0.5, 2.0, 0.3)
    raw = fourier_side(f, grid=128, L=10.0, lmax=10.0, nlambda=80) * lambda_measure_scale(1)
    assert raw / (2 * np.pi) ** 2 == pytest.approx(group_norm_sq(f, 128, 10.0), rel=2e-3)
