# algebra/rational.py
"""Exact rational scalars and their "p/q" text form.

Rationals are plain ``fractions.Fraction`` values: always in lowest terms with
a positive denominator, so equality is structural and no rounding ever occurs.
"""
from __future__ import annotations
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction (floats are refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    num, sep, den = text.partition("/")
    try:
        if sep:
            q = Fraction(int(num), int(den))
        else:
            q = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"bad rational literal {text!r}: {e}") from e
    return q


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
