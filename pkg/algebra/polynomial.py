# algebra/polynomial.py
"""Univariate polynomials in η and determinants of η-affine matrices.

A matrix whose entries have degree at most one in η is stored as the pair
(A, B) meaning A + ηB. Its determinant is recovered exactly by evaluating at
η = 0, 1, ..., k (k the size) with sympy's Bareiss determinant and applying the
inverse Vandermonde matrix of those nodes, so no elimination ever runs over
polynomial entries.
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from algebra.errors import DimensionMismatchError
from algebra.matrix import RatMatrix, Rows, det_rows, from_qq
from algebra.rational import as_rational, format_rational


@dataclass(frozen=True)
class EtaPoly:
    """Exact polynomial; ``coeffs[k]`` is the coefficient of η^k. Zero is ()."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c) -> "EtaPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "EtaPoly") -> "EtaPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        return EtaPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(k)))

    def __sub__(self, other: "EtaPoly") -> "EtaPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        return EtaPoly(tuple(self.coeff(i) - other.coeff(i) for i in range(k)))

    def __mul__(self, other) -> "EtaPoly":
        if not isinstance(other, EtaPoly):
            c = as_rational(other)
            return EtaPoly(tuple(c * x for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return EtaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return EtaPoly(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "EtaPoly":
        return EtaPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = [f"{format_rational(c)}η^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(terms))


@lru_cache(maxsize=None)
def _vandermonde_inverse(K: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Inverse of V[t][k] = t^k on the nodes t = 0..K, exact over QQ."""
    V = DomainMatrix([[QQ(t) ** k for k in range(K + 1)] for t in range(K + 1)], (K + 1, K + 1), QQ)
    return tuple(tuple(from_qq(x) for x in row) for row in V.inv().to_list())


def interpolate_coeffs(values: Sequence[Any]) -> List[Any]:
    """Monomial coefficients of the polynomial through (k, values[k]), k = 0..K.

    The coefficients are fixed rational combinations of the values, so values
    may be rationals, floats or dual numbers.
    """
    if not values:
        return []
    W = _vandermonde_inverse(len(values) - 1)
    return [sum((w * v for w, v in zip(row, values) if w), 0) for row in W]


def interpolate(values: Sequence) -> EtaPoly:
    return EtaPoly(tuple(interpolate_coeffs([as_rational(v) for v in values])))


@dataclass(frozen=True)
class EtaMatrix:
    """Square matrix A + ηB with entries of degree at most one in η."""

    const: Tuple[Tuple[Any, ...], ...]
    linear: Tuple[Tuple[Any, ...], ...]

    def __post_init__(self):
        k = len(self.const)
        if len(self.linear) != k or any(len(r) != k for r in self.const) \
                or any(len(r) != k for r in self.linear):
            raise DimensionMismatchError("η-affine matrix must be square with matching parts")

    @classmethod
    def of(cls, const: Rows, linear: Rows) -> "EtaMatrix":
        return cls(tuple(tuple(r) for r in const), tuple(tuple(r) for r in linear))

    @classmethod
    def from_ratmatrices(cls, const: RatMatrix, linear: RatMatrix) -> "EtaMatrix":
        return cls.of(const.to_rows(), linear.to_rows())

    @property
    def size(self) -> int:
        return len(self.const)

    def at(self, eta) -> List[List[Any]]:
        return [[a + eta * b for a, b in zip(ra, rb)] for ra, rb in zip(self.const, self.linear)]


def det_eta_coeffs(m: EtaMatrix) -> List[Any]:
    """Coefficients (index = power of η) of det(A + ηB), length size + 1."""
    k = m.size
    if k == 0:
        return [Fraction(1)]
    exact = _is_exact(m)
    values = [det_rows(m.at(Fraction(t) if exact else t)) for t in range(k + 1)]
    return interpolate_coeffs(values)


def det_eta(m: EtaMatrix) -> EtaPoly:
    """Exact determinant of an η-affine rational matrix as a polynomial."""
    if not _is_exact(m):
        raise TypeError("det_eta needs exact rational entries; use det_eta_coeffs")
    return EtaPoly(tuple(det_eta_coeffs(m)))


def _is_exact(m: EtaMatrix) -> bool:
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool)
               for part in (m.const, m.linear) for r in part for x in r)
