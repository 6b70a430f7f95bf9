# model/heisenberg.py
"""Schrödinger representations of a Heisenberg layer M_r and the Plancherel isometry for d_r = 1.

Coordinates (q, p, c): q on the row entries e_{r,r+1..n-r}, p on the column
entries e_{r+1..n-r, n-r+1}, c on the centre e_{r,n-r+1}, all exponential.
With this attachment the product law is

    (q1, p1, c1)(q2, p2, c2) = (q1 + q2, p1 + p2, c1 + c2 + ½(p2·q1 - p1·q2))

and [π_λ(q, p, c) f](ξ) = e^{iλ(p·ξ + ½p·q + c)} f(ξ + q) is a homomorphism.
"""
from __future__ import annotations
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import RegularGridInterpolator

from algebra.errors import DimensionMismatchError
from config import HEIS_GRID, HEIS_L, HEIS_LMAX, HEIS_MIN_GRID, HEIS_NLAMBDA, HEIS_OVERSAMPLE

logger = logging.getLogger(__name__)

# Under e^{iλ(...)} and Haar measure dq dp dc the isometry reads
# ‖f‖² = (2π)^{-(d+1)} ∫ ‖f̂(λ)‖²_HS |λ|^d dλ; the density 2^d d! |λ|^d is kept
# and the rest goes into the λ measure.
def plancherel_constant(d: int = 1) -> float:
    return float(2 ** d * math.factorial(d))


def lambda_measure_scale(d: int = 1) -> float:
    return plancherel_constant(d) * (2 * math.pi) ** (d + 1)


# ---------------- group ----------------
@dataclass(frozen=True)
class HeisenbergElement:
    r: int
    q: Tuple[float, ...]
    p: Tuple[float, ...]
    c: float = 0.0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("layers start at r = 1")
        q = tuple(float(x) for x in np.atleast_1d(self.q))
        p = tuple(float(x) for x in np.atleast_1d(self.p))
        if len(q) != len(p):
            raise DimensionMismatchError(f"q has {len(q)} entries, p has {len(p)}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", float(self.c))

    @property
    def d(self) -> int:
        return len(self.q)

    @property
    def n(self) -> int:
        return 2 * self.r + self.d

    @classmethod
    def identity(cls, r: int, d: int) -> "HeisenbergElement":
        return cls(r, (0.0,) * d, (0.0,) * d, 0.0)

    @classmethod
    def central(cls, r: int, d: int, c: float) -> "HeisenbergElement":
        return cls(r, (0.0,) * d, (0.0,) * d, c)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(self.r, tuple(-x for x in self.q), tuple(-x for x in self.p), -self.c)

    def log_matrix(self) -> np.ndarray:
        """Y = Σ q_j e_{r,r+j} + Σ p_j e_{r+j,n-r+1} + c e_{r,n-r+1} (0-based internally)."""
        n, r, d = self.n, self.r, self.d
        col = n - r
        Y = np.zeros((n, n))
        for k in range(d):
            Y[r - 1, r + k] = self.q[k]
            Y[r + k, col] = self.p[k]
        Y[r - 1, col] = self.c
        return Y

    def to_matrix(self) -> np.ndarray:
        """exp(Y) = I + Y + ½Y² in the defining n×n realization (Y³ = 0)."""
        Y = self.log_matrix()
        return np.eye(self.n) + Y + 0.5 * Y @ Y

    @classmethod
    def from_matrix(cls, M: np.ndarray, r: int) -> "HeisenbergElement":
        M = np.asarray(M, dtype=float)
        n = M.shape[0]
        d = n - 2 * r
        if d < 0:
            raise DimensionMismatchError(f"layer {r} does not exist for n={n}")
        col = n - r
        q = M[r - 1, r:r + d]
        p = M[r:r + d, col]
        c = M[r - 1, col] - 0.5 * float(np.dot(q, p))
        return cls(r, tuple(q), tuple(p), c)

    def to_json(self) -> dict:
        return {"r": self.r, "q": list(self.q), "p": list(self.p), "c": self.c}


def group_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    if x.r != y.r:
        raise ValueError(f"layer mismatch: {x.r} vs {y.r}")
    if x.d != y.d:
        raise DimensionMismatchError(f"layer width mismatch: {x.d} vs {y.d}")
    q1, p1, q2, p2 = (np.array(v) for v in (x.q, x.p, y.q, y.p))
    c = x.c + y.c + 0.5 * (float(p2 @ q1) - float(p1 @ q2))
    return HeisenbergElement(x.r, tuple(q1 + q2), tuple(p1 + p2), c)


def group_mul_matrix(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    """Product read back from the matrix realization."""
    if x.r != y.r or x.d != y.d:
        raise ValueError("layer mismatch")
    return HeisenbergElement.from_matrix(x.to_matrix() @ y.to_matrix(), x.r)


def group_commutator(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    return group_mul(group_mul(x, y), group_mul(x.inverse(), y.inverse()))


# ---------------- grid functions ----------------
def check_grid(grid: int):
    if grid < HEIS_MIN_GRID or grid & (grid - 1):
        raise ValueError(f"grid must be a power of two >= {HEIS_MIN_GRID}, got {grid}")


def grid_points(grid: int, L: float) -> np.ndarray:
    """Uniform points -L + kh, h = 2L/grid, k = 0..grid-1."""
    if grid < 2 or L <= 0:
        raise ValueError("grid parameters must be positive")
    return -L + (2 * L / grid) * np.arange(grid)


@dataclass
class GridFunction:
    samples: np.ndarray
    L: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.L <= 0 or self.samples.size == 0:
            raise ValueError("grid parameters must be positive")
        if len(set(self.samples.shape)) != 1:
            raise ValueError("grid must be the same size along every axis")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")

    @property
    def gridsize(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.ndim

    @property
    def h(self) -> float:
        return 2 * self.L / self.gridsize

    @property
    def axis(self) -> np.ndarray:
        return grid_points(self.gridsize, self.L)

    def mesh(self) -> List[np.ndarray]:
        return np.meshgrid(*([self.axis] * self.dim), indexing="ij")

    def norm(self) -> float:
        """Discrete L² norm (h^d Σ|f|²)^½."""
        return float(np.sqrt(self.h ** self.dim * np.sum(np.abs(self.samples) ** 2)))

    @classmethod
    def from_callable(cls, fn: Callable[..., np.ndarray], grid: int, L: float, dim: int = 1) -> "GridFunction":
        axes = np.meshgrid(*([grid_points(grid, L)] * dim), indexing="ij")
        return cls(fn(*axes), L)


def gaussian(grid: int, L: float, width: float = 1.0, center: float = 0.0, dim: int = 1) -> GridFunction:
    return GridFunction.from_callable(
        lambda *xs: np.exp(-sum((x - center) ** 2 for x in xs) / (2 * width ** 2)), grid, L, dim)


def _shift(f: GridFunction, q: Sequence[float]) -> np.ndarray:
    """Samples of ξ ↦ f(ξ + q), linear interpolation, zero outside [-L, L)."""
    x = f.axis
    if f.dim == 1:
        xs = x + q[0]
        re = np.interp(xs, x, f.samples.real, left=0.0, right=0.0)
        im = np.interp(xs, x, f.samples.imag, left=0.0, right=0.0)
        return re + 1j * im
    points = np.stack([m + qk for m, qk in zip(f.mesh(), q)], axis=-1)
    out = np.zeros(f.samples.shape, dtype=complex)
    for part, unit in ((f.samples.real, 1.0), (f.samples.imag, 1j)):
        interp = RegularGridInterpolator([x] * f.dim, part, bounds_error=False, fill_value=0.0)
        out += unit * interp(points)
    return out


def schrodinger_apply(lam: float, g: HeisenbergElement, f: GridFunction) -> GridFunction:
    """[π_λ(q, p, c) f](ξ) = e^{iλ(p·ξ + ½p·q + c)} f(ξ + q)."""
    if lam == 0:
        raise ValueError("π_λ needs λ ≠ 0")
    if g.d != f.dim:
        raise DimensionMismatchError(f"element acts on R^{g.d}, function lives on R^{f.dim}")
    p = np.array(g.p)
    q = np.array(g.q)
    p_dot_xi = sum(pk * m for pk, m in zip(p, f.mesh())) if g.d else 0.0
    phase = np.exp(1j * lam * (p_dot_xi + 0.5 * float(p @ q) + g.c))
    shifted = _shift(f, q) if np.any(q) else f.samples
    return GridFunction(phase * shifted, f.L)


# ---------------- separable functions on M_1 ----------------
Factor = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SeparableTerm:
    q: Factor
    p: Factor
    c: Factor
    weight: complex = 1.0


@dataclass(frozen=True)
class SeparableFunction:
    """f(q, p, c) = Σ_k w_k a_k(q) b_k(p) g_k(c) on the group M_1 (n = 3)."""

    terms: Tuple[SeparableTerm, ...] = field(default_factory=tuple)
    name: str = "f"

    def __call__(self, q, p, c):
        return sum(t.weight * t.q(q) * t.p(p) * t.c(c) for t in self.terms)

    def scale(self, k: complex) -> "SeparableFunction":
        return SeparableFunction(tuple(SeparableTerm(t.q, t.p, t.c, t.weight * k) for t in self.terms),
                                 f"{k}*{self.name}")

    @property
    def is_zero(self) -> bool:
        return not any(t.weight for t in self.terms)


def _gauss(width: float, center: float = 0.0) -> Factor:
    return lambda x: np.exp(-((x - center) ** 2) / (2 * width ** 2))


def gaussian_function(wq: float, wp: float, wc: float, q0: float = 0.0, p0: float = 0.0,
                      c0: float = 0.0, name: Optional[str] = None) -> SeparableFunction:
    term = SeparableTerm(_gauss(wq, q0), _gauss(wp, p0), _gauss(wc, c0))
    return SeparableFunction((term,), name or f"gauss({wq},{wp},{wc})")


def zero_function() -> SeparableFunction:
    return SeparableFunction((), "zero")


# Widths keep f inside [-L, L]³ at L = 10 and f̂(λ) inside |λ| ≤ 8.
TEST_FUNCTIONS = (
    gaussian_function(0.5, 2.0, 0.30, name="g1"),
    gaussian_function(0.8, 1.5, 0.35, q0=0.5, name="g2"),
    gaussian_function(0.6, 2.5, 0.30, c0=-0.5, name="g3"),
)


def _quad_axis(grid: int, L: float) -> np.ndarray:
    return np.linspace(-L, L, grid + 1)


def group_norm_sq(f: SeparableFunction, grid: int = HEIS_GRID, L: float = HEIS_L) -> float:
    """‖f‖²_{L²(M_1)} by trapezoid quadrature over [-L, L]³, one axis at a time."""
    x = _quad_axis(grid, L)
    total = 0.0 + 0.0j
    for s in f.terms:
        for t in f.terms:
            total += (s.weight * np.conj(t.weight)
                      * trapezoid(s.q(x) * np.conj(t.q(x)), x)
                      * trapezoid(s.p(x) * np.conj(t.p(x)), x)
                      * trapezoid(s.c(x) * np.conj(t.c(x)), x))
    return float(total.real)


class FourierOperator:
    """f̂(λ) = ∫ f(q, p, c) π_λ(q, p, c) dq dp dc as a matrix on a ξ-grid.

    Its kernel is K(ξ, η) = ∫∫ f(η - ξ, p, c) e^{iλ(p(ξ+η)/2 + c)} dp dc. The
    ξ-window is ``oversample`` times wider than [-L, L] since K spreads like 1/|λ|.
    """

    def __init__(self, f: SeparableFunction, grid: int = HEIS_GRID, L: float = HEIS_L,
                 oversample: int = HEIS_OVERSAMPLE):
        check_grid(grid)
        if L <= 0 or oversample < 1:
            raise ValueError("grid parameters must be positive")
        self.f = f
        self.h = 2 * L / grid
        self.M = oversample * grid
        self.xi = -oversample * L + self.h * np.arange(self.M)
        self.x = _quad_axis(grid, L)
        k = np.arange(2 * self.M - 1)
        self._diffs = self.h * (k - (self.M - 1))               # η - ξ
        self._half_sums = self.xi[0] + 0.5 * self.h * k         # (ξ + η)/2
        i = np.arange(self.M)
        self._sum_idx = i[:, None] + i[None, :]
        self._diff_idx = i[None, :] - i[:, None] + (self.M - 1)
        self._q_factors = [t.q(self._diffs) for t in f.terms]

    def _transform(self, factor: Factor, freqs: np.ndarray) -> np.ndarray:
        values = factor(self.x)
        return trapezoid(values[None, :] * np.exp(1j * np.outer(freqs, self.x)), self.x, axis=1)

    def kernel(self, lam: float) -> np.ndarray:
        K = np.zeros((self.M, self.M), dtype=complex)
        for t, A in zip(self.f.terms, self._q_factors):
            B = self._transform(t.p, lam * self._half_sums)
            G = self._transform(t.c, np.array([lam]))[0]
            K += t.weight * G * A[self._diff_idx] * B[self._sum_idx]
        return K

    def matrix(self, lam: float) -> np.ndarray:
        """Operator on grid samples: (f̂(λ)φ)_i ≈ Σ_j K(ξ_i, η_j) φ_j h."""
        return self.h * self.kernel(lam)

    def hs_norm_sq(self, lam: float) -> float:
        return float(np.sum(np.abs(self.matrix(lam)) ** 2))


def lambda_nodes(lmax: float, nlambda: int) -> np.ndarray:
    """nlambda trapezoid intervals on [-lmax, lmax]; λ = 0 is a node for even nlambda."""
    if lmax <= 0 or nlambda < 2:
        raise ValueError("λ quadrature needs lmax > 0 and at least two intervals")
    return np.linspace(-lmax, lmax, nlambda + 1)


def fourier_side(f: SeparableFunction, grid: int = HEIS_GRID, L: float = HEIS_L,
                 lmax: float = HEIS_LMAX, nlambda: int = HEIS_NLAMBDA,
                 oversample: int = HEIS_OVERSAMPLE) -> float:
    """∫ ‖f̂(λ)‖²_HS |λ| dλ / (2^d d! (2π)^{d+1}), d = 1, without the density constant."""
    lams = lambda_nodes(lmax, nlambda)
    if f.is_zero:
        return 0.0
    op = FourierOperator(f, grid, L, oversample)
    values = np.array([op.hs_norm_sq(lam) * abs(lam) if lam != 0 else np.nan for lam in lams])
    # |λ| ‖f̂(λ)‖² tends to a nonzero limit at λ = 0 that a finite window cannot resolve
    at_zero = np.isnan(values)
    values[at_zero] = np.interp(lams[at_zero], lams[~at_zero], values[~at_zero])
    return float(trapezoid(values, lams) / lambda_measure_scale(1))


def plancherel_isometry_demo(f: Optional[SeparableFunction] = None, grid: int = HEIS_GRID,
                             L: float = HEIS_L, lmax: float = HEIS_LMAX,
                             nlambda: int = HEIS_NLAMBDA, oversample: int = HEIS_OVERSAMPLE) -> dict:
    """Compare ‖f‖²_{L²(M_1)} with 2 ∫ ‖f̂(λ)‖²_HS |λ| dλ."""
    check_grid(grid)
    f = TEST_FUNCTIONS[0] if f is None else f
    lhs = group_norm_sq(f, grid, L)
    rhs = plancherel_constant(1) * fourier_side(f, grid, L, lmax, nlambda, oversample)
    ratio = rhs / lhs if lhs > 0 else None
    logger.info("plancherel %s grid=%d L=%g lmax=%g nlambda=%d: lhs %.6e rhs %.6e",
                f.name, grid, L, lmax, nlambda, lhs, rhs)
    return {"function": f.name, "grid": grid, "L": L, "lmax": lmax, "nlambda": nlambda,
            "lhs": lhs, "rhs": rhs, "ratio": ratio}


def plancherel_constant_fit(functions: Sequence[SeparableFunction] = TEST_FUNCTIONS,
                            grid: int = HEIS_GRID, L: float = HEIS_L, lmax: float = HEIS_LMAX,
                            nlambda: int = HEIS_NLAMBDA) -> float:
    """Least-squares c in ‖f‖² ≈ c · fourier_side(f) over a family of test functions.

    fourier_side already divides by 2 (2π)², so c ≈ 2 only checks consistency;
    the raw (2π)^{-2} normalization is checked against closed-form Gaussians.
    """
    lhs = np.array([group_norm_sq(f, grid, L) for f in functions])
    rhs = np.array([fourier_side(f, grid, L, lmax, nlambda) for f in functions])
    return float(lhs @ rhs / (rhs @ rhs))


def plancherel_suite(grid: int = HEIS_GRID, L: float = HEIS_L, lmax: float = HEIS_LMAX,
                     nlambda: int = HEIS_NLAMBDA, tol: float = 0.01) -> dict:
    reports = [plancherel_isometry_demo(f, grid, L, lmax, nlambda) for f in TEST_FUNCTIONS]
    failures = [r["function"] for r in reports if r["ratio"] is None or abs(r["ratio"] - 1) > tol]
    return {"suite": "heisenberg", "grid": grid, "L": L, "lmax": lmax, "nlambda": nlambda,
            "reports": reports, "checks": len(reports), "failures": failures}
