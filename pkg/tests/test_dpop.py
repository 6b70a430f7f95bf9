# tests/test_dpop.py
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.errors import DimensionMismatchError
from algebra.matrix import RatMatrix
from model.chops import random_generic_point
from model.dpop import (LambdaPoint, ad_jacobian_det, beta_form_weight, det_s_star,
                        diagonal_action, dp_exponents, dp_modular_weight_check, dp_report,
                        dp_symbol_value, dp_weight_check, gram_pfaffian, modular_delta,
                        pfaffian_consistency, pfaffian_rho)
from model.sampling import random_positive_diagonal, trial_rng

nonzero = st.integers(-9, 9).filter(bool)


def test_modular_delta_examples():
    assert modular_delta([2, 3]) == Fraction(3, 2)
    assert modular_delta(RatMatrix.diagonal([2, 3, 4])) == 4
    assert modular_delta([2.0, 3.0]) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        modular_delta([1, -2])
    with pytest.raises(ValueError):
        modular_delta(RatMatrix.from_rows([[1, 1], [0, 1]]))


def test_reciprocal_weights():
    a = RatMatrix.diagonal([2, 3, 4])
    assert ad_jacobian_det(a) == Fraction(1, 4)
    assert beta_form_weight(a) == Fraction(1, 4)


def test_pfaffian_rho_examples():
    assert pfaffian_rho(LambdaPoint(5, (2, 3))) == 2 ** 3 * 3
    assert pfaffian_rho(LambdaPoint(4, (2, 3))) == 4
    assert abs(gram_pfaffian(LambdaPoint(4, (2, 3)))) == 4
    assert det_s_star(LambdaPoint(4, (2, 3))) == 6


def test_lambda_point_validation():
    with pytest.raises(DimensionMismatchError):
        LambdaPoint(5, (1,))
    assert not LambdaPoint(4, (1, 0)).in_t_star
    with pytest.raises(TypeError):
        pfaffian_rho((1, 2))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(nonzero, min_size=n // 2,
                                                                          max_size=n // 2))))
def test_pfaffian_consistency(case):
    n, lam = case
    report = pfaffian_consistency(LambdaPoint(n, lam))
    assert report["square_matches_det"]
    assert report["matches_pfaffian_up_to_sign"]


@pytest.mark.parametrize("n,alpha,degree", [
    (2, (1,), 1), (4, (2, 1), 4), (5, (2, 2), 6), (12, (2, 2, 2, 2, 2, 1), 36),
])
def test_dp_exponents(n, alpha, degree):
    sym = dp_exponents(n)
    assert sym.alpha == alpha
    assert sym.degree == degree


def test_dp_weights_n5():
    assert dp_exponents(5).weight_beta == (4, 2)


@pytest.mark.parametrize("n", range(2, 17))
def test_dp_identities(n):
    report = dp_weight_check(n)
    assert report["failures"] == []
    assert all(report["identity_checks"].values())


def test_dp_report_keys():
    assert set(dp_report(6)) == {"n", "alpha", "degree", "weight_beta", "identity_checks"}
    with pytest.raises(ValueError):
        dp_report(1)


def test_symbol_scales_by_inverse_modular_function():
    rng = trial_rng(21)
    X = random_generic_point(rng, 5)
    a = random_positive_diagonal(rng, 5)
    moved = diagonal_action(a, X)
    assert dp_symbol_value(moved) * modular_delta(a) == dp_symbol_value(X)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_modular_weight_suite(n):
    assert dp_modular_weight_check(n, trials=3, seed=0)["failures"] == []
