# algebra/dual.py
"""Exact dual numbers value + derivative·δ with δ² = 0 (first-order forward mode)."""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from algebra.rational import as_rational

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class DualRational:
    """Dual number over the rationals, used for exact directional derivatives."""

    value: Fraction
    derivative: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))
        object.__setattr__(self, "derivative", as_rational(self.derivative))

    @staticmethod
    def _lift(other) -> "DualRational":
        if isinstance(other, DualRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DualRational(Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualRational(self.value + o.value, self.derivative + o.derivative)

    __radd__ = __add__

    def __neg__(self) -> "DualRational":
        return DualRational(-self.value, -self.derivative)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualRational(self.value - o.value, self.derivative - o.derivative)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualRational(self.value * o.value,
                            self.value * o.derivative + self.derivative * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise ZeroDivisionError("dual division by a zero value part")
        value = self.value / o.value
        derivative = (self.derivative * o.value - self.value * o.derivative) / (o.value * o.value)
        return DualRational(value, derivative)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int) -> "DualRational":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = DualRational(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.value == 0 and self.derivative == 0

    def __repr__(self) -> str:
        return f"{self.value} + {self.derivative}δ"


def derivative_at(f: Callable[[DualRational], DualRational], x0: Scalar) -> Fraction:
    """Exact first derivative of f at x0, seeding the dual part with 1."""
    return f(DualRational(as_rational(x0), Fraction(1))).derivative
