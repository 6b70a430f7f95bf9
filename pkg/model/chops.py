# model/chops.py
"""Chop semi-invariants E_{m,r}, their weights and the coadjoint actions they transform under.

The r-chop of X - ηI keeps rows r+1..n and columns 1..n-r. Its determinant is a
polynomial of degree at most n-2r in η and E_{m,r} is the coefficient of
η^{n-2r-m}, so E_{0,r} is the leading coefficient and E_{0,0} = (-1)^n.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Tuple, Union

from algebra.errors import DimensionMismatchError, GenericityError, SingularMatrixError
from algebra.matrix import RatMatrix, Rows, det, inverse
from algebra.polynomial import EtaMatrix, EtaPoly, det_eta_coeffs
from algebra.rational import format_rational
from config import GENERICITY_TOL
from lie.decomposition import principal_nilpotent
from model.sampling import (random_hessenberg, random_invertible_on, random_on_positions,
                            random_rational, random_strictly_lower, random_unipotent,
                            resample, trial_rng)

logger = logging.getLogger(__name__)


# ---------------- points ----------------
@dataclass(frozen=True)
class HessenbergPoint:
    """X in ε + b₋: superdiagonal 1, zero above it, free on and below the diagonal."""

    X: RatMatrix

    def __post_init__(self):
        if not is_hessenberg(self.X):
            raise ValueError("matrix is not lower Hessenberg with unit superdiagonal")

    @property
    def n(self) -> int:
        return self.X.rows

    @classmethod
    def from_rows(cls, rows: Rows) -> "HessenbergPoint":
        return cls(RatMatrix.from_rows(rows))

    def to_json(self) -> dict:
        return self.X.to_json()


def is_hessenberg(X: RatMatrix) -> bool:
    if not X.is_square:
        return False
    n = X.rows
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if X.at(i, j) != (1 if j == i + 1 else 0):
                return False
    return True


def _matrix(X: Union[HessenbergPoint, RatMatrix]) -> RatMatrix:
    return X.X if isinstance(X, HessenbergPoint) else X


def max_level(n: int) -> int:
    return n // 2


def _check_level(n: int, r: int):
    if not 0 <= r <= max_level(n):
        raise ValueError(f"chop level r={r} outside 0..{max_level(n)} for n={n}")


# ---------------- chop polynomials ----------------
def chop_matrix(rows: Rows, r: int) -> EtaMatrix:
    """The r-chop of X - ηI as an η-affine matrix."""
    n = len(rows)
    k = n - r
    const = [[rows[r + a][b] for b in range(k)] for a in range(k)]
    linear = [[-1 if r + a == b else 0 for b in range(k)] for a in range(k)]
    return EtaMatrix.of(const, linear)


@lru_cache(maxsize=4096)
def _chop_coeffs_cached(rows: Tuple[Tuple[Any, ...], ...], r: int) -> Tuple[Any, ...]:
    return tuple(det_eta_coeffs(chop_matrix(rows, r)))


def chop_coeffs_rows(rows: Rows, r: int) -> Tuple[Any, ...]:
    """Coefficients (index = power of η) of the r-chop determinant over any scalar ring."""
    n = len(rows)
    _check_level(n, r)
    return _chop_coeffs_cached(tuple(tuple(row) for row in rows), r)


def chop_coeffs(X: Union[HessenbergPoint, RatMatrix], r: int) -> EtaPoly:
    """Exact r-chop polynomial det((X - ηI) with first r rows and last r columns removed)."""
    M = _matrix(X)
    if not M.is_square:
        raise DimensionMismatchError("chops need a square matrix")
    return EtaPoly(chop_coeffs_rows(M.to_rows(), r))


def chop_coefficient_rows(rows: Rows, m: int, r: int):
    n = len(rows)
    _check_level(n, r)
    deg = n - 2 * r
    if not 0 <= m <= deg:
        raise ValueError(f"coefficient index m={m} outside 0..{deg}")
    return chop_coeffs_rows(rows, r)[deg - m]


def chop_coefficient(X: Union[HessenbergPoint, RatMatrix], m: int, r: int) -> Fraction:
    """E_{m,r}(X)."""
    return chop_coefficient_rows(_matrix(X).to_rows(), m, r)


def leading_block_formula(X: Union[HessenbergPoint, RatMatrix], r: int) -> Fraction:
    """E_{0,r} via the lower-left r×r block: (-1)^{(r+1)(n-2r)} det(X[n-r+1..n, 1..r])."""
    M = _matrix(X)
    n = M.rows
    _check_level(n, r)
    if r == 0:
        return Fraction((-1) ** n)
    block = M.submatrix(list(range(n - r, n)), list(range(r)))
    return (-1) ** ((r + 1) * (n - 2 * r)) * det(block)


def _is_zero(x) -> bool:
    value = getattr(x, "value", x)
    if isinstance(value, float):
        return abs(value) < GENERICITY_TOL
    return value == 0


def casimir_ratio_rows(rows: Rows, m: int, r: int):
    """I(m,r) = E_{m,r}/E_{0,r} over any scalar ring with division."""
    e0 = chop_coefficient_rows(rows, 0, r)
    if _is_zero(e0):
        raise GenericityError(f"E_(0,{r}) vanishes; point is not generic at level {r}", r=r)
    return chop_coefficient_rows(rows, m, r) / e0


def casimir_I(X: Union[HessenbergPoint, RatMatrix], m: int, r: int) -> Fraction:
    return casimir_ratio_rows(_matrix(X).to_rows(), m, r)


@dataclass(frozen=True)
class ChopFamily:
    n: int
    polys: Tuple[EtaPoly, ...]          # index r = 0..R

    def E(self, m: int, r: int) -> Fraction:
        return self.polys[r].coeff(self.n - 2 * r - m)

    @property
    def generic(self) -> Tuple[bool, ...]:
        return tuple(self.E(0, r) != 0 for r in range(len(self.polys)))

    def is_generic(self) -> bool:
        return all(self.generic)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chops": [{"r": r,
                       "poly": p.to_json(),
                       "E": [format_rational(self.E(m, r)) for m in range(self.n - 2 * r + 1)],
                       "generic": self.generic[r]}
                      for r, p in enumerate(self.polys)],
        }


def chop_family(X: Union[HessenbergPoint, RatMatrix]) -> ChopFamily:
    M = _matrix(X)
    return ChopFamily(M.rows, tuple(chop_coeffs(M, r) for r in range(max_level(M.rows) + 1)))


def is_generic(X: Union[HessenbergPoint, RatMatrix]) -> bool:
    M = _matrix(X)
    return all(leading_block_formula(M, r) != 0 for r in range(1, max_level(M.rows) + 1))


def involutive_levels(n: int) -> range:
    """Levels r whose ratios I(m,r) enter the involutive family: 1..⌊(n-1)/2⌋."""
    return range(1, (n - 1) // 2 + 1)


def casimir_vector(X: Union[HessenbergPoint, RatMatrix]) -> Tuple[Fraction, ...]:
    """(Tr X, I(1,1), ..., I(1,⌊(n-1)/2⌋))."""
    M = _matrix(X)
    return (M.trace(),) + tuple(casimir_I(M, 1, r) for r in involutive_levels(M.rows))


def random_generic_point(rng, n: int) -> HessenbergPoint:
    return HessenbergPoint(resample(lambda: random_hessenberg(rng, n), is_generic, "generic Hessenberg point"))


# ---------------- parabolic subgroups and their coadjoint action ----------------
def tau(n: int, r: int) -> RatMatrix:
    """τ_r = Σ e_{i,i+1} over i in {1..r} ∪ {n-r..n-1}."""
    idx = set(range(1, r + 1)) | set(range(n - r, n)) if r else set()
    return RatMatrix.from_positions(n, {(i, i + 1): 1 for i in idx if 1 <= i < n})


def parabolic_positions(n: int, r: int) -> List[Tuple[int, int]]:
    """Support of p_r: upper triangle, plus (i, j) below it with j > r and i <= n-r."""
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if i <= j or (j > r and i <= n - r)]


def dual_positions(n: int, r: int) -> List[Tuple[int, int]]:
    """Support of p_{r-}, the transpose of p_r."""
    return [(j, i) for i, j in parabolic_positions(n, r)]


def project_dual(M: RatMatrix, r: int) -> RatMatrix:
    n = M.rows
    return RatMatrix.from_positions(n, {(i, j): M.at(i, j) for i, j in dual_positions(n, r)})


def in_affine_space(X: RatMatrix, r: int) -> bool:
    """X ∈ τ_r + p_{r-}."""
    Y = X - tau(X.rows, r)
    return project_dual(Y, r) == Y


@dataclass(frozen=True)
class ParabolicElement:
    r: int
    p: RatMatrix

    def __post_init__(self):
        n = self.p.rows
        if not self.p.is_square:
            raise DimensionMismatchError("parabolic element must be square")
        _check_level(n, self.r)
        support = set(parabolic_positions(n, self.r))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if (i, j) not in support and self.p.at(i, j) != 0:
                    raise ValueError(f"entry ({i},{j}) must vanish in P_{self.r}")
        if det(self.p) == 0:
            raise SingularMatrixError("parabolic element is singular")

    @property
    def n(self) -> int:
        return self.p.rows


def _parabolic_matrix(p: Union[ParabolicElement, RatMatrix]) -> RatMatrix:
    return p.p if isinstance(p, ParabolicElement) else p


def weight_chi(r: int, p: Union[ParabolicElement, RatMatrix]) -> Fraction:
    """χ_r(p) = p_11⋯p_rr / (p_{n-r+1,n-r+1}⋯p_nn)."""
    P = _parabolic_matrix(p)
    n = P.rows
    num, den = Fraction(1), Fraction(1)
    for i in range(1, r + 1):
        num *= P.at(i, i)
    for i in range(n - r + 1, n + 1):
        den *= P.at(i, i)
    if num == 0 or den == 0:
        raise ValueError("weight χ_r needs nonzero diagonal entries")
    return num / den


def coadjoint_P(r: int, p: Union[ParabolicElement, RatMatrix], X: Union[HessenbergPoint, RatMatrix]) -> RatMatrix:
    """Ad*_p X = τ_r + π_{p_{r-}}(p⁻¹(X - τ_r)p); composition reads Ad*_{p1}Ad*_{p2} = Ad*_{p2 p1}."""
    P = _parabolic_matrix(p)
    M = _matrix(X)
    t = tau(M.rows, r)
    if not in_affine_space(M, r):
        raise ValueError(f"X - τ_{r} does not lie in p_{r}-")
    return t + project_dual(inverse(P) @ (M - t) @ P, r)


def random_parabolic(rng, n: int, r: int) -> ParabolicElement:
    return ParabolicElement(r, random_invertible_on(rng, n, parabolic_positions(n, r)))


def random_affine_point(rng, n: int, r: int) -> RatMatrix:
    return random_on_positions(rng, n, dual_positions(n, r), base=tau(n, r))


def semi_invariance_check(n: int, r: int, m: int, trials: int, seed: int) -> Dict[str, Any]:
    """E_{m,r}(Ad*_p X) = χ_r(p) E_{m,r}(X) at random exact (X, p); failures are reported."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    _check_level(n, r)
    failures = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        X = random_affine_point(rng, n, r)
        p = random_parabolic(rng, n, r)
        lhs = chop_coefficient(coadjoint_P(r, p, X), m, r)
        rhs = weight_chi(r, p) * chop_coefficient(X, m, r)
        if lhs != rhs:
            logger.debug("semi-invariance failed n=%d r=%d m=%d trial=%d", n, r, m, trial)
            failures.append(trial)
    return {"n": n, "r": r, "m": m, "trials": trials, "failures": failures}


def semi_invariance_suite(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """Every (r, m) pair for one n."""
    checks = []
    for r in range(0, max_level(n) + 1):
        for m in range(0, n - 2 * r + 1):
            checks.append(semi_invariance_check(n, r, m, trials, seed))
    failures = [{"r": c["r"], "m": c["m"], "trial": t} for c in checks for t in c["failures"]]
    logger.info("semi-invariance n=%d: %d checks, %d failures", n, len(checks), len(failures))
    return {"suite": "semiinv", "n": n, "trials": trials, "seed": seed,
            "checks": len(checks), "failures": failures}


# ---------------- unipotent action on strictly-lower matrices ----------------
def coadjoint_N_restricted(nelt: RatMatrix, Y: RatMatrix) -> RatMatrix:
    """π_<(n⁻¹ Y n) for unipotent upper-triangular n and strictly-lower Y."""
    k = nelt.rows
    if nelt.shape != Y.shape or not nelt.is_square:
        raise DimensionMismatchError("unipotent element and point must be square of one size")
    for i in range(1, k + 1):
        for j in range(1, i + 1):
            if nelt.at(i, j) != (1 if i == j else 0):
                raise ValueError("expected a unipotent upper-triangular matrix")
            if Y.at(j, i) != 0:
                raise ValueError("expected a strictly lower-triangular matrix")
    Z = inverse(nelt) @ Y @ nelt
    return RatMatrix.from_positions(k, {(i, j): Z.at(i, j) for i in range(1, k + 1) for j in range(1, i)})


def n_invariance_check(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """E_{0,r} is N-invariant and homogeneous of degree r on strictly-lower matrices."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    failures = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        Y = random_strictly_lower(rng, n)
        u = random_unipotent(rng, n)
        t = random_rational(rng, nonzero=True)
        moved = coadjoint_N_restricted(u, Y)
        for r in range(1, max_level(n) + 1):
            e0 = chop_coefficient(Y, 0, r)
            if chop_coefficient(moved, 0, r) != e0:
                failures.append({"trial": trial, "r": r, "check": "invariance"})
            if chop_coefficient(Y.scale(t), 0, r) != t ** r * e0:
                failures.append({"trial": trial, "r": r, "check": "homogeneity"})
            if leading_block_formula(Y, r) != e0:
                failures.append({"trial": trial, "r": r, "check": "block-formula"})
    logger.info("N-invariance n=%d: %d trials, %d failures", n, trials, len(failures))
    return {"suite": "ninv", "n": n, "trials": trials, "seed": seed,
            "checks": trials * max_level(n) * 3, "failures": failures}


def hessenberg_from(M: RatMatrix) -> HessenbergPoint:
    """ε + (lower-triangular part of M)."""
    n = M.rows
    lower = RatMatrix.from_positions(n, {(i, j): M.at(i, j) for i in range(1, n + 1) for j in range(1, i + 1)})
    return HessenbergPoint(principal_nilpotent(n) + lower)
