# algebra/errors.py
from __future__ import annotations
from typing import Optional


class AlgebraError(ValueError):
    """Base class for input errors raised by the exact and float layers."""


class DimensionMismatchError(AlgebraError):
    pass


class SingularMatrixError(AlgebraError):
    pass


class UnknownPartError(AlgebraError):
    pass


class GenericityError(AlgebraError):
    """A leading chop coefficient E_{0,r} vanished where a ratio needed it."""

    def __init__(self, message: str, r: Optional[int] = None, time: Optional[float] = None):
        if time is not None:
            message = f"{message} (t={time:.6g})"
        super().__init__(message)
        self.r = r
        self.time = time
