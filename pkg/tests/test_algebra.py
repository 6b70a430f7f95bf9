# tests/test_algebra.py
import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.dual import DualRational, derivative_at
from algebra.errors import DimensionMismatchError, SingularMatrixError
from algebra.matrix import (RatMatrix, adjugate, commutator, det, det_rows, in_span, inverse,
                            nullspace, pair, pfaffian, rank, solve, span_equal)
from algebra.polynomial import EtaMatrix, EtaPoly, det_eta, det_eta_coeffs, interpolate
from algebra.rational import as_rational, format_rational, parse_rational

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def square(k):
    return st.lists(st.lists(rationals, min_size=k, max_size=k), min_size=k, max_size=k)


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Fraction((-1) ** inversions)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


# ---------------- rationals ----------------
def test_parse_and_format():
    assert parse_rational(" -6/4 ") == Fraction(-3, 2)
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("bad", ["", "1/0", "a/b", "1.5"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(rationals)
def test_format_parse_is_identity(q):
    assert parse_rational(format_rational(q)) == q


# ---------------- dual numbers ----------------
@given(rationals, rationals, rationals, rationals)
def test_dual_product_rule(a, da, b, db):
    out = DualRational(a, da) * DualRational(b, db)
    assert out.value == a * b
    assert out.derivative == a * db + da * b


@given(rationals, rationals, rationals.filter(lambda x: x != 0), rationals)
def test_dual_quotient_rule(a, da, b, db):
    out = DualRational(a, da) / DualRational(b, db)
    assert out.value == a / b
    assert out.derivative == (da * b - a * db) / (b * b)


def test_dual_division_by_zero_value():
    with pytest.raises(ZeroDivisionError):
        DualRational(1, 1) / DualRational(0, 3)


@given(rationals)
def test_derivative_of_cubic(x):
    assert derivative_at(lambda t: t * t * t - 2 * t, x) == 3 * x * x - 2


# ---------------- matrices ----------------
def test_rank_examples():
    assert rank(RatMatrix.zeros(3)) == 0
    assert rank(RatMatrix.identity(3)) == 3
    assert rank(RatMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_span_equal_examples():
    e1, e2 = (1, 0), (0, 1)
    assert span_equal([e1], [(2, 0)])
    assert not span_equal([e1], [e2])
    assert span_equal([e1, e2], [(1, 1), (1, -1)])


def test_shape_errors():
    with pytest.raises(DimensionMismatchError):
        RatMatrix.identity(2) + RatMatrix.identity(3)
    with pytest.raises(DimensionMismatchError):
        det(RatMatrix.zeros(2, 3))
    with pytest.raises(DimensionMismatchError):
        RatMatrix.from_rows([[1, 2], [3]])


def test_empty_determinant_is_one():
    assert det(RatMatrix.zeros(0)) == 1
    assert det_rows([]) == 1


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(square))
def test_det_matches_cofactor_expansion(rows):
    assert det(RatMatrix.from_rows(rows)) == cofactor_det(rows)


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(square))
def test_dual_determinant_matches_exact(rows):
    duals = [[DualRational(x) for x in r] for r in rows]
    assert det_rows(duals).value == cofactor_det(rows)


def test_inverse_and_solve():
    m = RatMatrix.from_rows([[2, 1], [5, 3]])
    assert m @ inverse(m) == RatMatrix.identity(2)
    assert solve(m, [1, 2]) == (Fraction(1), Fraction(-1))
    with pytest.raises(SingularMatrixError):
        inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))


def test_solve_edge_cases():
    singular = RatMatrix.from_rows([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError, match="inconsistent"):
        solve(singular, [1, 3])
    with pytest.raises(SingularMatrixError, match="unique"):
        solve(singular, [1, 2])
    tall = RatMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert solve(tall, [2, 3, 5]) == (Fraction(2), Fraction(3))
    with pytest.raises(DimensionMismatchError):
        solve(tall, [1, 2])


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(square(k), square(k))))
def test_jacobi_formula_for_dual_determinant(parts):
    # d/dt det(M + tD) at t = 0 is Tr(adj(M) D)
    M, D = parts
    duals = [[DualRational(m, d) for m, d in zip(rm, rd)] for rm, rd in zip(M, D)]
    expected = pair(adjugate(RatMatrix.from_rows(M)), RatMatrix.from_rows(D))
    assert det_rows(duals).derivative == expected


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(square))
def test_adjugate_times_matrix_is_det(rows):
    m = RatMatrix.from_rows(rows)
    assert m @ adjugate(m) == det(m) * RatMatrix.identity(len(rows))


def test_nullspace_and_in_span():
    m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    kernel = nullspace(m)
    assert len(kernel) == 2
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.to_rows())
    assert in_span((1, 1, 0), [(1, 0, 0), (0, 1, 0)])
    assert not in_span((0, 0, 1), [(1, 0, 0), (0, 1, 0)])


def test_pfaffian_of_standard_form():
    J = RatMatrix.from_rows([[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 5], [0, 0, -5, 0]])
    assert pfaffian(J) == 15
    assert pfaffian(J) ** 2 == det(J)
    with pytest.raises(ValueError):
        pfaffian(RatMatrix.identity(2))


@settings(max_examples=30)
@given(st.lists(rationals, min_size=6, max_size=6))
def test_pfaffian_squared_is_determinant(upper):
    it = iter(upper)
    vals = {}
    for i in range(4):
        for j in range(i + 1, 4):
            v = next(it)
            vals[(i, j)], vals[(j, i)] = v, -v
    m = RatMatrix.from_rows([[vals.get((i, j), 0) for j in range(4)] for i in range(4)])
    assert pfaffian(m) ** 2 == det(m)


@given(st.integers(2, 4).flatmap(square), st.integers(2, 4).flatmap(square))
def test_commutator_is_antisymmetric(a, b):
    if len(a) != len(b):
        return
    A, B = RatMatrix.from_rows(a), RatMatrix.from_rows(b)
    assert commutator(A, B) == -commutator(B, A)
    assert pair(A, commutator(A, B)) == -pair(A, commutator(B, A))


def test_json_round_trip():
    m = RatMatrix.from_rows([[Fraction(1, 2), 0], [-3, Fraction(7, 5)]])
    assert RatMatrix.from_json(m.to_json()) == m
    assert m.to_json()["entries"][0][0] == "1/2"


# ---------------- η-polynomials ----------------
def test_det_eta_examples():
    assert det_eta(EtaMatrix.of([], [])) == EtaPoly.constant(1)
    ident = EtaMatrix.of([[1, 0], [0, 1]], [[-1, 0], [0, -1]])
    assert det_eta(ident).coeffs == (1, -2, 1)
    chop = EtaMatrix.of([[0, 2], [1, 0]], [[0, -1], [0, 0]])
    assert det_eta(chop).coeffs == (-2, 1)


@settings(max_examples=25)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(square(k), square(k))), rationals)
def test_det_eta_evaluates_like_determinant(parts, eta):
    A, B = parts
    m = EtaMatrix.of(A, B)
    assert det_eta(m)(eta) == cofactor_det(m.at(eta))


def test_det_eta_coeffs_accepts_floats():
    m = EtaMatrix.of([[1.0, 0.0], [0.0, 1.0]], [[-1.0, 0.0], [0.0, -1.0]])
    coeffs = det_eta_coeffs(m)
    assert coeffs == pytest.approx([1.0, -2.0, 1.0])
    with pytest.raises(TypeError):
        det_eta(m)


def test_interpolate_recovers_polynomial():
    p = EtaPoly((Fraction(1, 3), -2, 0, 5))
    assert interpolate([p(k) for k in range(4)]) == p
