# model/poisson.py
"""Lie-Poisson bracket on ε + b₋ and the observables it acts on.

An observable is a scalar function of the rows of X written with ring
operations only, so one definition evaluates on rationals, floats and dual
numbers. Gradients are read off by dual evaluation: A_G = Σ_{i≥j} ∂G/∂x_ij e_{j,i}.
With {F, G}(X) = Tr(X [A_F, A_G]), a flow generated by F moves every G by
dG/dt = {G, F}.
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from algebra.dual import DualRational
from algebra.matrix import RatMatrix, Rows, commutator, mat_mul_rows, pair
from config import FD_STEP
from model.chops import (HessenbergPoint, casimir_ratio_rows, chop_coefficient_rows,
                         involutive_levels, random_generic_point)
from model.sampling import trial_rng

logger = logging.getLogger(__name__)

Point = Union[HessenbergPoint, RatMatrix]


def _rows(X: Point) -> List[List[Any]]:
    M = X.X if isinstance(X, HessenbergPoint) else X
    return M.to_rows()


def upper_part(M: RatMatrix) -> RatMatrix:
    """π_{b₊}: keep entries on and above the diagonal."""
    n = M.rows
    return RatMatrix.from_positions(n, {(i, j): M.at(i, j) for i in range(1, n + 1) for j in range(i, n + 1)})


def lower_part(M: RatMatrix) -> RatMatrix:
    """π_{b₋}: keep entries on and below the diagonal."""
    n = M.rows
    return RatMatrix.from_positions(n, {(i, j): M.at(i, j) for i in range(1, n + 1) for j in range(1, i + 1)})


def strictly_lower_part(M: RatMatrix) -> RatMatrix:
    n = M.rows
    return RatMatrix.from_positions(n, {(i, j): M.at(i, j) for i in range(1, n + 1) for j in range(1, i)})


# ---------------- observables ----------------
@dataclass(frozen=True)
class Observable:
    name: str
    tag: str                                   # trace-power, E, I, coordinate, linear, product, user
    fn: Callable[[Rows], Any]
    coeff: Optional[RatMatrix] = None          # C for linear observables X ↦ Tr(XC)

    def __call__(self, X: Point):
        return self.fn(_rows(X))

    def at_rows(self, rows: Rows):
        return self.fn(rows)

    def __mul__(self, other: "Observable") -> "Observable":
        f, g = self.fn, other.fn
        return Observable(f"({self.name})*({other.name})", "product", lambda rows: f(rows) * g(rows))


def _trace_power(rows: Rows, m: int):
    P = [list(r) for r in rows]
    for _ in range(m - 1):
        P = mat_mul_rows(P, rows)
    acc = 0
    for i in range(len(P)):
        acc = acc + P[i][i]
    return acc


def trace_power(m: int) -> Observable:
    """Tr X^m."""
    if m < 1:
        raise ValueError("trace powers start at m = 1")
    return Observable(f"tr_x{m}", "trace-power", lambda rows: _trace_power(rows, m))


def chop_observable(m: int, r: int) -> Observable:
    """E_{m,r}."""
    return Observable(f"E_{m}_{r}", "E", lambda rows: chop_coefficient_rows(rows, m, r))


def casimir_ratio(m: int, r: int) -> Observable:
    """I(m,r) = E_{m,r}/E_{0,r}."""
    return Observable(f"I_{m}_{r}", "I", lambda rows: casimir_ratio_rows(rows, m, r))


def coordinate(i: int, j: int) -> Observable:
    """x_ij for a position on or below the diagonal (1-based)."""
    if i < j:
        raise ValueError(f"x_{i}{j} is not a coordinate of ε + b₋")
    return Observable(f"x_{i}_{j}", "coordinate", lambda rows: rows[i - 1][j - 1])


def linear(C: RatMatrix, name: Optional[str] = None) -> Observable:
    """X ↦ Tr(XC)."""
    entries = [(a, b, C[b, a]) for a in range(C.rows) for b in range(C.cols) if C[b, a] != 0]

    def fn(rows):
        acc = 0
        for a, b, c in entries:
            acc = acc + rows[a][b] * c
        return acc
    return Observable(name or f"tr_xc[{C!r}]", "linear", fn, coeff=C)


def linear_bracket(F: Observable, G: Observable) -> Observable:
    """{F, G} for linear F, G: again linear, with C = [π₊C_F, π₊C_G]."""
    if F.coeff is None or G.coeff is None:
        raise ValueError("linear_bracket needs two linear observables")
    C = commutator(upper_part(F.coeff), upper_part(G.coeff))
    return linear(C, name=f"{{{F.name},{G.name}}}")


def involutive_family(n: int) -> List[Observable]:
    """{Tr X^m : m = 1..n} ∪ {I(m,r) : 1 ≤ r ≤ ⌊(n-1)/2⌋, 1 ≤ m ≤ n-2r}."""
    fam = [trace_power(m) for m in range(1, n + 1)]
    fam += [casimir_ratio(m, r) for r in involutive_levels(n) for m in range(1, n - 2 * r + 1)]
    return fam


def casimir_family(n: int) -> List[Observable]:
    """{Tr X} ∪ {I(1,r)}."""
    return [trace_power(1)] + [casimir_ratio(1, r) for r in involutive_levels(n)]


def coordinates(n: int) -> List[Observable]:
    return [coordinate(i, j) for i in range(1, n + 1) for j in range(1, i + 1)]


# ---------------- gradients ----------------
def grad_repr(G: Observable, X: Point) -> RatMatrix:
    """A_G ∈ b₊, the unique upper-triangular matrix with Tr(A_G δ) = dG(X)[δ] for δ ∈ b₋."""
    rows = _rows(X)
    n = len(rows)
    base = [[DualRational(x) for x in row] for row in rows]
    values = {}
    for i in range(n):
        for j in range(i + 1):
            seeded = [list(row) for row in base]
            seeded[i][j] = DualRational(rows[i][j], 1)
            out = G.fn(seeded)
            values[(j + 1, i + 1)] = out.derivative if isinstance(out, DualRational) else Fraction(0)
    return RatMatrix.from_positions(n, values)


def grad_fd(G: Observable, X: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Central finite-difference gradient representative at a float point."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            plus, minus = X.copy(), X.copy()
            plus[i, j] += step
            minus[i, j] -= step
            A[j, i] = (float(G.fn(plus.tolist())) - float(G.fn(minus.tolist()))) / (2 * step)
    return A


def gradient_fd_error(G: Observable, X: Point, step: float = FD_STEP) -> float:
    """Max relative gap between the dual gradient and central differences."""
    exact = grad_repr(G, X).to_numpy()
    approx = grad_fd(G, (X.X if isinstance(X, HessenbergPoint) else X).to_numpy(), step)
    scale = max(np.abs(exact).max(), 1.0)
    return float(np.abs(exact - approx).max() / scale)


# ---------------- bracket and vector fields ----------------
def bracket_from_grads(X: Point, A_F: RatMatrix, A_G: RatMatrix) -> Fraction:
    M = X.X if isinstance(X, HessenbergPoint) else X
    return pair(M, commutator(A_F, A_G))


def bracket(F: Observable, G: Observable, X: Point) -> Fraction:
    """{F, G}(X) = Tr(X [A_F, A_G])."""
    return bracket_from_grads(X, grad_repr(F, X), grad_repr(G, X))


def hamiltonian_vf(F: Observable, X: Point) -> RatMatrix:
    """Ẋ = π_{b₋}([A_F, X]); then dG/dt = Tr(Ẋ A_G) = {G, F}."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    return lower_part(commutator(grad_repr(F, M), M))


def toda_field(X: Point) -> RatMatrix:
    """Full Kostant-Toda field π_{b₋}([π_{b₊}X, X]) in closed form."""
    M = X.X if isinstance(X, HessenbergPoint) else X
    return lower_part(commutator(upper_part(M), M))


def jacobi_sum(F: Observable, G: Observable, H: Observable, X: Point) -> Fraction:
    """{F,{G,H}} + {G,{H,F}} + {H,{F,G}} for linear observables."""
    return (bracket(F, linear_bracket(G, H), X)
            + bracket(G, linear_bracket(H, F), X)
            + bracket(H, linear_bracket(F, G), X))


# ---------------- suites ----------------
def involutivity_suite(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """Every pairwise bracket of the involutive family vanishes at random generic points."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    family = involutive_family(n)
    failures = []
    for trial in range(trials):
        X = random_generic_point(trial_rng(seed, trial), n)
        grads = [grad_repr(F, X) for F in family]
        for (a, A), (b, B) in itertools.combinations(list(enumerate(grads)), 2):
            value = bracket_from_grads(X, A, B)
            if value != 0:
                logger.debug("bracket %s,%s = %s at trial %d", family[a].name, family[b].name, value, trial)
                failures.append({"trial": trial, "pair": [family[a].name, family[b].name]})
    pairs = len(family) * (len(family) - 1) // 2
    logger.info("involutivity n=%d: %d pairs x %d trials, %d failures", n, pairs, trials, len(failures))
    return {"suite": "involutivity", "n": n, "trials": trials, "seed": seed,
            "family": [F.name for F in family], "checks": pairs * trials, "failures": failures}


def casimir_suite(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """{C, x_ij} = 0 for C in {Tr X} ∪ {I(1,r)} and every coordinate x_ij."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    family = casimir_family(n)
    coords = coordinates(n)
    failures = []
    for trial in range(trials):
        X = random_generic_point(trial_rng(seed, trial), n)
        coord_grads = [grad_repr(x, X) for x in coords]
        for C in family:
            A_C = grad_repr(C, X)
            for x, A_x in zip(coords, coord_grads):
                if bracket_from_grads(X, A_C, A_x) != 0:
                    failures.append({"trial": trial, "casimir": C.name, "coordinate": x.name})
    logger.info("casimir n=%d: %d trials, %d failures", n, trials, len(failures))
    return {"suite": "casimir", "n": n, "trials": trials, "seed": seed,
            "family": [C.name for C in family], "checks": trials * len(family) * len(coords),
            "failures": failures}


def jacobi_check(n: int, trials: int, seed: int) -> Dict[str, Any]:
    """Jacobi identity on all triples of coordinate observables."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    coords = [linear(RatMatrix.unit(n, j, i), name=f"x_{i}_{j}")
              for i in range(1, n + 1) for j in range(1, i + 1)]
    failures = []
    for trial in range(trials):
        X = random_generic_point(trial_rng(seed, trial), n)
        for F, G, H in itertools.combinations(coords, 3):
            if jacobi_sum(F, G, H, X) != 0:
                failures.append({"trial": trial, "triple": [F.name, G.name, H.name]})
    triples = len(coords) * (len(coords) - 1) * (len(coords) - 2) // 6
    return {"suite": "jacobi", "n": n, "trials": trials, "seed": seed,
            "checks": triples * trials, "failures": failures}


# ---------------- float helpers used by the flow ----------------
def evaluate_float(observables: Sequence[Observable], X: np.ndarray) -> Dict[str, float]:
    rows = np.asarray(X, dtype=float).tolist()
    return {G.name: float(G.fn(rows)) for G in observables}
