# tests/test_chops.py
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.errors import GenericityError, SingularMatrixError
from algebra.matrix import RatMatrix
from algebra.polynomial import EtaPoly
from lie.decomposition import principal_nilpotent
from model.chops import (HessenbergPoint, ParabolicElement, casimir_I, casimir_vector, chop_coeffs,
                         chop_coefficient, chop_family, coadjoint_N_restricted, coadjoint_P,
                         hessenberg_from, is_generic, leading_block_formula, n_invariance_check,
                         random_affine_point, random_generic_point, random_parabolic,
                         semi_invariance_check, semi_invariance_suite, weight_chi)
from model.sampling import random_hessenberg, trial_rng

F12 = HessenbergPoint.from_rows([[1, 1, 0], [0, 2, 1], [1, 0, 1]])


def test_chop_of_shifted_nilpotent():
    X = principal_nilpotent(3) + RatMatrix.unit(3, 3, 1)
    assert chop_coeffs(X, 1) == EtaPoly((0, 1))
    assert chop_coefficient(X, 0, 1) == 1
    assert chop_coefficient(X, 1, 1) == 0
    assert leading_block_formula(X, 1) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_level_zero_is_characteristic_polynomial(n):
    X = random_hessenberg(trial_rng(7), n)
    assert chop_coefficient(X, 0, 0) == (-1) ** n
    assert chop_coefficient(X, 1, 0) == (-1) ** (n - 1) * X.trace()


def test_casimirs_of_cross_section_point():
    assert casimir_I(F12, 1, 1) == -2
    assert casimir_vector(F12) == (4, -2)


def test_vanishing_leading_coefficient_is_not_generic():
    eps = HessenbergPoint(principal_nilpotent(3))
    assert not is_generic(eps)
    with pytest.raises(GenericityError) as info:
        casimir_I(eps, 1, 1)
    assert info.value.r == 1


def test_index_checks():
    with pytest.raises(ValueError):
        chop_coefficient(F12, 2, 1)
    with pytest.raises(ValueError):
        chop_coefficient(F12, 0, 2)
    with pytest.raises(ValueError):
        HessenbergPoint(RatMatrix.identity(3))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10_000))
def test_block_formula_matches_chop(n, seed):
    X = random_hessenberg(trial_rng(seed), n)
    for r in range(n // 2 + 1):
        assert leading_block_formula(X, r) == chop_coefficient(X, 0, r)


def test_family_json():
    fam = chop_family(F12)
    dump = fam.to_json()
    assert fam.is_generic()
    assert [c["r"] for c in dump["chops"]] == [0, 1]
    assert dump["chops"][1]["E"] == ["1", "-2"]


def test_hessenberg_from_keeps_lower_part():
    M = RatMatrix.from_rows([[1, 9, 9], [2, 3, 9], [4, 5, 6]])
    assert hessenberg_from(M).X == RatMatrix.from_rows([[1, 1, 0], [2, 3, 1], [4, 5, 6]])


# ---------------- weights and parabolic action ----------------
def test_weight_chi_examples():
    assert weight_chi(2, RatMatrix.diagonal([1, 2, 3, 4])) == Fraction(1, 6)
    assert weight_chi(1, RatMatrix.diagonal([2, 1])) == 2


def test_coadjoint_scales_lower_entry():
    X = RatMatrix.from_rows([[3, 1], [5, 7]])
    moved = coadjoint_P(1, RatMatrix.diagonal([2, 1]), X)
    assert moved == RatMatrix.from_rows([[3, 1], [10, 7]])


def test_parabolic_element_validation():
    with pytest.raises(ValueError):
        ParabolicElement(1, RatMatrix.identity(3).with_entries({(1, 0): 1}))
    with pytest.raises(SingularMatrixError):
        ParabolicElement(1, RatMatrix.diagonal([1, 0, 1]))


def test_coadjoint_action_composes():
    rng = trial_rng(3)
    n, r = 5, 1
    X = random_affine_point(rng, n, r)
    p1, p2 = random_parabolic(rng, n, r), random_parabolic(rng, n, r)
    twice = coadjoint_P(r, p1, coadjoint_P(r, p2, X))
    assert twice == coadjoint_P(r, p2.p @ p1.p, X)


def test_semi_invariance_n5():
    report = semi_invariance_suite(5, 3, 42)
    assert report["checks"] == 12
    assert report["failures"] == []


@pytest.mark.parametrize("n,r,m", [(2, 1, 0), (4, 2, 0), (6, 2, 1), (7, 3, 1)])
def test_semi_invariance_single(n, r, m):
    assert semi_invariance_check(n, r, m, trials=3, seed=11)["failures"] == []


def test_semi_invariance_rejects_zero_trials():
    with pytest.raises(ValueError):
        semi_invariance_check(4, 1, 0, trials=0, seed=0)


# ---------------- unipotent invariance ----------------
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_n_invariance(n):
    report = n_invariance_check(n, trials=4, seed=5)
    assert report["failures"] == []
    assert report["checks"] == 4 * (n // 2) * 3


def test_restricted_action_validates_inputs():
    Y = RatMatrix.from_rows([[0, 0], [1, 0]])
    with pytest.raises(ValueError):
        coadjoint_N_restricted(RatMatrix.diagonal([2, 1]), Y)
    with pytest.raises(ValueError):
        coadjoint_N_restricted(RatMatrix.identity(2), RatMatrix.identity(2))


def test_random_generic_point_is_generic():
    X = random_generic_point(trial_rng(1), 6)
    assert all(chop_family(X).generic)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_genericity_survives_small_perturbations(n):
    X = random_generic_point(trial_rng(30 + n), n).X
    eps = Fraction(1, 10 ** 6)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            for sign in (1, -1):
                assert is_generic(X + (sign * eps) * RatMatrix.unit(n, i, j))
