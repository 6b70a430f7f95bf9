# model/sampling.py
"""Seeded random draws of rationals and structured matrices.

Every trial gets its own numpy Generator spawned from (seed, trial), so a
suite gives the same draws whatever order its trials run in.
"""
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from algebra.errors import GenericityError
from algebra.matrix import RatMatrix, det
from config import (DENOMINATOR_RANGE, FLOAT_DIAG_RANGE, FLOAT_LOWER_RANGE,
                    FLOAT_SUBDIAG_RANGE, MAX_RESAMPLE, NUMERATOR_RANGE)

T = TypeVar("T")


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(trial),)))


def random_rational(rng: np.random.Generator, nonzero: bool = False, positive: bool = False) -> Fraction:
    lo, hi = NUMERATOR_RANGE
    if positive:
        lo = 1
    while True:
        num = int(rng.integers(lo, hi + 1))
        if num or not (nonzero or positive):
            break
    den = int(rng.integers(DENOMINATOR_RANGE[0], DENOMINATOR_RANGE[1] + 1))
    return Fraction(num, den)


def random_rationals(rng: np.random.Generator, k: int, nonzero: bool = False) -> Tuple[Fraction, ...]:
    return tuple(random_rational(rng, nonzero=nonzero) for _ in range(k))


def resample(draw: Callable[[], T], accept: Callable[[T], bool], what: str) -> T:
    """Draw until ``accept`` holds, giving up after MAX_RESAMPLE attempts."""
    for _ in range(MAX_RESAMPLE):
        x = draw()
        if accept(x):
            return x
    raise GenericityError(f"no acceptable {what} after {MAX_RESAMPLE} draws")


def random_on_positions(rng: np.random.Generator, n: int, positions: Sequence[Tuple[int, int]],
                        base: Optional[RatMatrix] = None) -> RatMatrix:
    """``base`` (default zero) plus random rationals on the given 1-based positions."""
    base = RatMatrix.zeros(n) if base is None else base
    return base + RatMatrix.from_positions(n, {pos: random_rational(rng) for pos in positions})


def random_hessenberg(rng: np.random.Generator, n: int) -> RatMatrix:
    """Superdiagonal 1, zero above it, random rationals on and below the diagonal."""
    eps = {(i, i + 1): 1 for i in range(1, n)}
    lower = {(i, j): random_rational(rng) for i in range(1, n + 1) for j in range(1, i + 1)}
    return RatMatrix.from_positions(n, {**eps, **lower})


def random_strictly_lower(rng: np.random.Generator, n: int) -> RatMatrix:
    return RatMatrix.from_positions(
        n, {(i, j): random_rational(rng) for i in range(1, n + 1) for j in range(1, i)})


def random_unipotent(rng: np.random.Generator, n: int) -> RatMatrix:
    upper = {(i, j): random_rational(rng) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return RatMatrix.identity(n) + RatMatrix.from_positions(n, upper)


def random_positive_diagonal(rng: np.random.Generator, n: int) -> RatMatrix:
    return RatMatrix.diagonal([random_rational(rng, positive=True) for _ in range(n)])


def random_borel(rng: np.random.Generator, n: int) -> RatMatrix:
    """Upper triangular with positive diagonal: an element of B."""
    return random_positive_diagonal(rng, n) @ random_unipotent(rng, n)


def random_invertible_on(rng: np.random.Generator, n: int, positions: Sequence[Tuple[int, int]]) -> RatMatrix:
    """Random invertible matrix supported on ``positions`` with a nonzero diagonal."""
    def draw():
        m = random_on_positions(rng, n, positions)
        diag = {(i, i): random_rational(rng, nonzero=True) for i in range(1, n + 1)}
        return m.with_entries({(i - 1, j - 1): v for (i, j), v in diag.items()})
    return resample(draw, lambda m: det(m) != 0, "invertible matrix")


def random_float_hessenberg(rng: np.random.Generator, n: int) -> np.ndarray:
    """Float flow start: unit superdiagonal, positive subdiagonal, small positive entries below it."""
    X = np.zeros((n, n))
    for i in range(n):
        X[i, i] = rng.uniform(*FLOAT_DIAG_RANGE)
        if i + 1 < n:
            X[i, i + 1] = 1.0
        for j in range(i):
            X[i, j] = rng.uniform(*(FLOAT_SUBDIAG_RANGE if j == i - 1 else FLOAT_LOWER_RANGE))
    return X


def random_lambda(rng: np.random.Generator, R: int) -> Tuple[Fraction, ...]:
    return random_rationals(rng, R, nonzero=True)


def random_kappa(rng: np.random.Generator, k: int) -> List[Fraction]:
    return list(random_rationals(rng, k))
