# model/dpop.py
"""Modular function of B, the Pfaffian of b_λ and the symbol of the Dixmier-Pukanszky operator.

The symbol is Π_r E_{0,r}^{α_r} with α = (I - ε)(d + 1), the unique solution of
Σ_{r≥ℓ} α_r = d_ℓ + 1. Under a diagonal a it scales by δ_B(a)⁻¹.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple, Union

from algebra.errors import DimensionMismatchError
from algebra.matrix import RatMatrix, det, pfaffian
from algebra.rational import as_rational, format_rational
from lie.decomposition import build_decomposition, gram_b_lambda, principal_nilpotent, strictly_upper
from model.chops import HessenbergPoint, chop_coefficient, random_generic_point
from model.sampling import random_positive_diagonal, trial_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LambdaPoint:
    """Coordinates λ_r on s*, λ_r dual to e_{r,n-r+1}."""

    n: int
    lam: Tuple[Fraction, ...]

    def __post_init__(self):
        lam = tuple(as_rational(x) for x in self.lam)
        if len(lam) != self.n // 2:
            raise DimensionMismatchError(f"λ has {len(lam)} entries, expected R={self.n // 2}")
        object.__setattr__(self, "lam", lam)

    @property
    def in_t_star(self) -> bool:
        return all(x != 0 for x in self.lam)


def _diagonal(a: Union[RatMatrix, Sequence]) -> list:
    """Diagonal entries, as Fractions unless some entry is a float."""
    if isinstance(a, RatMatrix):
        if not a.is_square or any(a[i, j] for i in range(a.rows) for j in range(a.cols) if i != j):
            raise ValueError("expected a diagonal matrix")
        return [a[i, i] for i in range(a.rows)]
    diag = list(a)
    if all(isinstance(x, (int, Fraction)) for x in diag):
        return [as_rational(x) for x in diag]
    return [float(x) for x in diag]


def modular_delta(a: Union[RatMatrix, Sequence]):
    """δ_B(a) = Π_i a_i^{2i-n-1} on a positive diagonal."""
    diag = _diagonal(a)
    if any(x <= 0 for x in diag):
        raise ValueError("modular function needs a positive diagonal")
    n = len(diag)
    out = Fraction(1) if all(isinstance(x, Fraction) for x in diag) else 1.0
    for i, x in enumerate(diag, start=1):
        out *= x ** (2 * i - n - 1)
    return out


def ad_jacobian_det(a: Union[RatMatrix, Sequence]) -> Fraction:
    """det(Ad_a) on the strictly upper triangular algebra, built from conjugation."""
    diag = [as_rational(x) for x in _diagonal(a)]
    n = len(diag)
    A = RatMatrix.diagonal(diag)
    A_inv = RatMatrix.diagonal([1 / x for x in diag])
    basis = strictly_upper(n)
    columns = []
    for i, j in basis:
        img = A @ RatMatrix.unit(n, i, j) @ A_inv
        columns.append([img.at(p, q) for p, q in basis])
    return det(RatMatrix.from_rows(columns).T)


def beta_form_weight(a: Union[RatMatrix, Sequence]):
    """Π_r (a_r / a_{n-r+1})^{d_r+1}, the weight of the symbol; equals δ_B(a)⁻¹."""
    diag = _diagonal(a)
    n = len(diag)
    out = Fraction(1) if all(isinstance(x, Fraction) for x in diag) else 1.0
    for r in range(1, n // 2 + 1):
        out *= (diag[r - 1] / diag[n - r]) ** (n - 2 * r + 1)
    return out


def _lam(lam: Union[LambdaPoint, Sequence]) -> Tuple[int, Tuple[Fraction, ...]]:
    if isinstance(lam, LambdaPoint):
        return lam.n, lam.lam
    raise TypeError("expected a LambdaPoint")


def pfaffian_rho(lam: LambdaPoint) -> Fraction:
    """ρ(λ) = Π_r λ_r^{d_r}."""
    n, values = _lam(lam)
    out = Fraction(1)
    for r, x in enumerate(values, start=1):
        out *= x ** (n - 2 * r)
    return out


def gram_pfaffian(lam: LambdaPoint) -> Fraction:
    """Pfaffian of the Gram matrix of b_λ on the elementary basis of v."""
    n, values = _lam(lam)
    return pfaffian(gram_b_lambda(values, n))


def pfaffian_consistency(lam: LambdaPoint) -> Dict[str, Any]:
    n, values = _lam(lam)
    gram = gram_b_lambda(values, n)
    rho = pfaffian_rho(lam)
    return {"rho": format_rational(rho),
            "square_matches_det": rho * rho == abs(det(gram)),
            "matches_pfaffian_up_to_sign": abs(pfaffian(gram)) == abs(rho)}


def det_s_star(lam: LambdaPoint) -> Fraction:
    """Π_r β_r(λ), with β_r(λ) read as the coefficient λ_r."""
    _, values = _lam(lam)
    out = Fraction(1)
    for x in values:
        out *= x
    return out


@dataclass(frozen=True)
class DPSymbol:
    n: int
    alpha: Tuple[int, ...]
    degree: int
    weight_beta: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "alpha": list(self.alpha), "degree": self.degree,
                "weight_beta": list(self.weight_beta)}


def dp_exponents(n: int) -> DPSymbol:
    """Solve Σ_{r≥ℓ} α_r = d_ℓ + 1 by α = (I - ε)(d + 1)."""
    dec = build_decomposition(n)
    target = [d + 1 for d in dec.d]
    R = dec.R
    alpha = tuple(target[r] - (target[r + 1] if r + 1 < R else 0) for r in range(R))
    degree = sum(a * r for r, a in enumerate(alpha, start=1))
    weight = tuple(sum(alpha[l:]) for l in range(R))
    return DPSymbol(n, alpha, degree, weight)


def dp_weight_check(n: int) -> Dict[str, Any]:
    """Integer identities behind the symbol: Toeplitz system, β-weights, degree."""
    sym = dp_exponents(n)
    dec = build_decomposition(n)
    R = dec.R
    toeplitz = all(sum(sym.alpha[l:]) == dec.d[l] + 1 for l in range(R))
    # Σ_r α_r (β_1 + ... + β_r) expanded in the β-basis
    expanded = [0] * R
    for r, a in enumerate(sym.alpha):
        for l in range(r + 1):
            expanded[l] += a
    weight_ok = expanded == [d + 1 for d in dec.d]
    half = dec.dim_n + len(dec.s)
    degree_ok = half % 2 == 0 and sym.degree == half // 2
    closed_alpha = (2,) * R if n % 2 else (2,) * (R - 1) + (1,)
    closed_degree = R * (R + 1) if n % 2 else R * R
    checks = {"toeplitz": toeplitz, "beta_weight": weight_ok, "degree_half_dim": degree_ok,
              "alpha_closed_form": sym.alpha == closed_alpha,
              "degree_closed_form": sym.degree == closed_degree}
    failures = [k for k, ok in checks.items() if not ok]
    return {"suite": "dp", "n": n, **sym.to_json(), "identity_checks": checks,
            "checks": len(checks), "failures": failures}


def dp_symbol_value(X) -> Fraction:
    """σ(X) = Π_r E_{0,r}(X)^{α_r}."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    sym = dp_exponents(M.rows)
    out = Fraction(1)
    for r, a in enumerate(sym.alpha, start=1):
        out *= chop_coefficient(M, 0, r) ** a
    return out


def diagonal_action(a: RatMatrix, X) -> HessenbergPoint:
    """ε + a⁻¹(X - ε)a for a positive diagonal a."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    eps = principal_nilpotent(M.rows)
    a_inv = RatMatrix.diagonal([1 / a[i, i] for i in range(a.rows)])
    return HessenbergPoint(eps + a_inv @ (M - eps) @ a)


def dp_modular_weight_check(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """σ(a·X) = δ_B(a)⁻¹ σ(X), with δ_B⁻¹ also taken from the Jacobian of Ad_a."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    failures = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        X = random_generic_point(rng, n)
        a = random_positive_diagonal(rng, n)
        lhs = dp_symbol_value(diagonal_action(a, X))
        if lhs != dp_symbol_value(X) / modular_delta(a):
            failures.append({"trial": trial, "check": "symbol-weight"})
        if ad_jacobian_det(a) * modular_delta(a) != 1:
            failures.append({"trial": trial, "check": "jacobian"})
        if beta_form_weight(a) * modular_delta(a) != 1:
            failures.append({"trial": trial, "check": "beta-form"})
    logger.info("dp modular weight n=%d: %d trials, %d failures", n, trials, len(failures))
    return {"suite": "dp-weight", "n": n, "trials": trials, "seed": seed, "failures": failures}


def dp_report(n: int) -> Dict[str, Any]:
    """dp-symbol output: exponents, degree, β-weights and the identity checks."""
    report = dp_weight_check(n)
    return {k: report[k] for k in ("n", "alpha", "degree", "weight_beta", "identity_checks")}
