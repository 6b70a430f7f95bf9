# lie/decomposition.py
"""Index-level decomposition of gl(n) around the Borel subalgebra.

Positions are 1-based (i, j) pairs naming the elementary matrix e_{i,j}.
The strictly upper triangular algebra n splits into Heisenberg layers
m_r = row part ⊕ column part ⊕ center e_{r,n-r+1}, r = 1..R (R = n // 2);
the row parts form v⁺, the column parts v⁻, the centers s.
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from algebra.errors import DimensionMismatchError, UnknownPartError
from algebra.matrix import RatMatrix
from algebra.rational import as_rational


class BasisIndex(NamedTuple):
    i: int
    j: int


Positions = Tuple[BasisIndex, ...]

PARTS = ("strictly-lower", "strictly-upper", "b+", "b-", "diagonal", "m", "s", "v", "v+", "v-")


def _idx(pairs) -> Positions:
    return tuple(sorted(BasisIndex(i, j) for i, j in pairs))


def strictly_upper(n: int) -> Positions:
    return _idx((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def strictly_lower(n: int) -> Positions:
    return _idx((i, j) for i in range(1, n + 1) for j in range(1, i))


def upper(n: int) -> Positions:
    """Positions of b₊ (upper triangular, diagonal included)."""
    return _idx((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


def lower(n: int) -> Positions:
    """Positions of b₋ (lower triangular, diagonal included)."""
    return _idx((i, j) for i in range(1, n + 1) for j in range(1, i + 1))


def principal_nilpotent(n: int) -> RatMatrix:
    """ε = e_{1,2} + ... + e_{n-1,n}."""
    return RatMatrix.from_positions(n, {(i, i + 1): 1 for i in range(1, n)})


@dataclass(frozen=True)
class Layer:
    r: int
    d: int
    row: Positions
    column: Positions
    center: BasisIndex

    @property
    def m(self) -> Positions:
        return _idx(self.row + self.column + (self.center,))

    @property
    def z(self) -> Positions:
        return (self.center,)

    @property
    def v(self) -> Positions:
        return _idx(self.row + self.column)


@dataclass(frozen=True)
class BetaRoot:
    """β_r: ξ ↦ ξ_r - ξ_{n-r+1} on diagonal coordinates."""

    n: int
    r: int

    def __call__(self, xi: Sequence) -> Fraction:
        if len(xi) != self.n:
            raise DimensionMismatchError(f"β_{self.r} expects {self.n} diagonal coordinates")
        return as_rational(xi[self.r - 1]) - as_rational(xi[self.n - self.r])

    def vector(self) -> Tuple[int, ...]:
        out = [0] * self.n
        out[self.r - 1] += 1
        out[self.n - self.r] -= 1
        return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    n: int
    R: int
    d: Tuple[int, ...]
    layers: Tuple[Layer, ...]
    s: Positions
    v_plus: Positions
    v_minus: Positions
    a_diamond: Tuple[Tuple[int, ...], ...]   # diagonal positions summed in each basis vector
    betas: Tuple[BetaRoot, ...]

    # ---------------- derived index sets ----------------
    @property
    def v(self) -> Positions:
        return _idx(self.v_plus + self.v_minus)

    @property
    def nilradical(self) -> Positions:
        return strictly_upper(self.n)

    def layer(self, r: int) -> Layer:
        if not 1 <= r <= self.R:
            raise ValueError(f"layer index r={r} outside 1..{self.R}")
        return self.layers[r - 1]

    @property
    def dim_n(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def dim_a_diamond(self) -> int:
        return len(self.a_diamond)

    @property
    def dim_h(self) -> int:
        return self.dim_a_diamond + len(self.s) + len(self.v_plus)

    def a_diamond_basis(self) -> List[RatMatrix]:
        return [RatMatrix.from_positions(self.n, {(k, k): 1 for k in ks}) for ks in self.a_diamond]

    def positions(self, part: str, r: Optional[int] = None) -> Positions:
        n = self.n
        if part == "strictly-lower":
            return strictly_lower(n)
        if part == "strictly-upper":
            return strictly_upper(n)
        if part == "b+":
            return upper(n)
        if part == "b-":
            return lower(n)
        if part == "diagonal":
            return _idx((i, i) for i in range(1, n + 1))
        if part == "m":
            if r is None:
                raise ValueError("layer projection needs r")
            return self.layer(r).m
        if part == "s":
            return self.s
        if part == "v":
            return self.v
        if part == "v+":
            return self.v_plus
        if part == "v-":
            return self.v_minus
        raise UnknownPartError(f"unknown part {part!r}; expected one of {PARTS}")

    def project(self, X: RatMatrix, part: str, r: Optional[int] = None) -> RatMatrix:
        """Zero every entry of X outside the selected index set."""
        if X.shape != (self.n, self.n):
            raise DimensionMismatchError(f"expected a {self.n}x{self.n} matrix, got {X.shape}")
        keep = self.positions(part, r)
        return RatMatrix.from_positions(self.n, {(i, j): X.at(i, j) for i, j in keep})

    def to_json(self) -> dict:
        def pl(ps):
            return [[p.i, p.j] for p in ps]
        return {
            "n": self.n,
            "R": self.R,
            "d": list(self.d),
            "dims": {"n": self.dim_n, "s": len(self.s), "v+": len(self.v_plus),
                     "v-": len(self.v_minus), "a_diamond": self.dim_a_diamond, "h": self.dim_h},
            "layers": [{"r": L.r, "d": L.d, "m": pl(L.m), "z": pl(L.z), "v": pl(L.v)}
                       for L in self.layers],
            "s": pl(self.s),
            "v+": pl(self.v_plus),
            "v-": pl(self.v_minus),
            "a_diamond": [[[k, k] for k in ks] for ks in self.a_diamond],
            "beta": [list(b.vector()) for b in self.betas],
        }


def build_decomposition(n: int) -> Decomposition:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    R = n // 2
    layers = []
    for r in range(1, R + 1):
        c = n - r + 1
        row = _idx((r, j) for j in range(r + 1, c))
        column = _idx((i, c) for i in range(r + 1, c))
        layers.append(Layer(r=r, d=n - 2 * r, row=row, column=column, center=BasisIndex(r, c)))
    v_plus = _idx((i, j) for i in range(1, n + 1) for j in range(i + 1, n - i + 1))
    v_minus = _idx((i, j) for j in range(1, n + 1) for i in range(n - j + 2, j))
    a_diamond = [(r, n - r + 1) for r in range(1, R + 1)]
    if n % 2:
        a_diamond.append((R + 1,))
    return Decomposition(
        n=n,
        R=R,
        d=tuple(L.d for L in layers),
        layers=tuple(layers),
        s=_idx((r, n - r + 1) for r in range(1, R + 1)),
        v_plus=v_plus,
        v_minus=v_minus,
        a_diamond=tuple(a_diamond),
        betas=tuple(BetaRoot(n, r) for r in range(1, R + 1)),
    )


def project(X: RatMatrix, part: str, r: Optional[int] = None) -> RatMatrix:
    return build_decomposition(X.rows).project(X, part, r)


def bracket_coefficients(x: RatMatrix, y: RatMatrix, positions: Sequence[Tuple[int, int]]) -> Dict[Tuple[int, int], Fraction]:
    """Entries of [x, y] at the given 1-based positions, without forming the product."""
    n = x.rows
    out = {}
    for i, j in positions:
        s = Fraction(0)
        for k in range(1, n + 1):
            s += x.at(i, k) * y.at(k, j) - y.at(i, k) * x.at(k, j)
        out[(i, j)] = s
    return out


def bilinear_b_lambda(lam: Sequence, x: RatMatrix, y: RatMatrix) -> Fraction:
    """b_λ(x, y) = Σ_r λ_r · [x, y]_{r, n-r+1} on strictly upper x, y."""
    n = x.rows
    R = n // 2
    if len(lam) != R:
        raise DimensionMismatchError(f"λ has {len(lam)} entries, expected R={R}")
    if x.shape != (n, n) or y.shape != (n, n):
        raise DimensionMismatchError("b_λ needs two square matrices of one size")
    for m in (x, y):
        if any(m.at(i, j) for i in range(1, n + 1) for j in range(1, i + 1)):
            raise ValueError("b_λ is defined on strictly upper triangular matrices")
    centers = [(r, n - r + 1) for r in range(1, R + 1)]
    coeffs = bracket_coefficients(x, y, centers)
    return sum((as_rational(l) * coeffs[c] for l, c in zip(lam, centers)), Fraction(0))


def gram_b_lambda(lam: Sequence, n: int) -> RatMatrix:
    """Gram matrix of b_λ on the elementary basis of v (sorted positions)."""
    dec = build_decomposition(n)
    basis = [RatMatrix.unit(n, i, j) for i, j in dec.v]
    return RatMatrix.from_rows([[bilinear_b_lambda(lam, a, b) for b in basis] for a in basis])
