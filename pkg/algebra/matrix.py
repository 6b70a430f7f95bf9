# algebra/matrix.py
"""Dense exact matrices over the rationals, backed by sympy's DomainMatrix over QQ.

``RatMatrix`` keeps Fraction entries for indexing and JSON; elimination, products,
inverses and kernels run on the QQ DomainMatrix view. ``det_rows`` also takes
float rows (numpy) and rows of dual numbers, which go through QQ[δ].
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.rings import ring

from algebra.dual import DualRational
from algebra.errors import DimensionMismatchError, SingularMatrixError
from algebra.rational import as_rational, format_rational, parse_rational

Vector = Tuple[Fraction, ...]
Rows = Sequence[Sequence[Any]]

# dual numbers a + bδ live in QQ[δ]; only the δ^0 and δ^1 coefficients are read back
_DUAL_RING, _DELTA = ring("delta", QQ)
_DUAL_DOMAIN = _DUAL_RING.to_domain()


def to_qq(x) -> Any:
    q = as_rational(x)
    return QQ(q.numerator, q.denominator)


def from_qq(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def domain_matrix(rows: Rows, ncols: Optional[int] = None) -> DomainMatrix:
    """QQ DomainMatrix of a row list of exact scalars."""
    rows = [[to_qq(x) for x in r] for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix(rows, (len(rows), ncols), QQ)


@dataclass(frozen=True)
class RatMatrix:
    """Row-major exact rational matrix. Indexing with ``m[i, j]`` is 0-based."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        entries = tuple(as_rational(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    # ---------------- constructors ----------------
    @classmethod
    def from_rows(cls, rows: Rows) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "RatMatrix":
        m, n = dm.shape
        return cls(m, n, tuple(from_qq(x) for r in dm.to_list() for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        out = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            out[i * n + i] = as_rational(v)
        return cls(n, n, tuple(out))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RatMatrix":
        """Elementary matrix e_{i,j} of size n, with 1-based (i, j)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"e_({i},{j}) outside a {n}x{n} matrix")
        return cls.zeros(n).with_entries({(i - 1, j - 1): 1})

    @classmethod
    def from_positions(cls, n: int, values: Dict[Tuple[int, int], Any]) -> "RatMatrix":
        """Matrix with the given 1-based positions set, zero elsewhere."""
        return cls.zeros(n).with_entries({(i - 1, j - 1): v for (i, j), v in values.items()})

    # ---------------- access ----------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @cached_property
    def dm(self) -> DomainMatrix:
        return domain_matrix(self.to_rows(), self.cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def at(self, i: int, j: int) -> Fraction:
        """1-based entry access, matching e_{i,j} notation."""
        return self[i - 1, j - 1]

    def to_rows(self) -> List[List[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def vec(self) -> Vector:
        return self.entries

    def with_entries(self, updates: Dict[Tuple[int, int], Any]) -> "RatMatrix":
        out = list(self.entries)
        for (i, j), v in updates.items():
            out[i * self.cols + j] = as_rational(v)
        return RatMatrix(self.rows, self.cols, tuple(out))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(row_idx), len(col_idx),
                         tuple(self[i, j] for i in row_idx for j in col_idx))

    def map(self, fn) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # ---------------- arithmetic ----------------
    def _check_same_shape(self, other: "RatMatrix"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RatMatrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return self.map(lambda x: c * x)

    def __rmul__(self, c) -> "RatMatrix":
        return self.scale(c)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        return RatMatrix.from_domain(self.dm.matmul(other.dm))

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    # ---------------- formats ----------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[format_rational(x) for x in r] for r in self.to_rows()]}

    @classmethod
    def from_json(cls, data: dict) -> "RatMatrix":
        rows = [[parse_rational(str(x)) for x in r] for r in data["entries"]]
        m = cls.from_rows(rows) if rows else cls.zeros(int(data.get("rows", 0)), int(data.get("cols", 0)))
        if (m.rows, m.cols) != (int(data.get("rows", m.rows)), int(data.get("cols", m.cols))):
            raise DimensionMismatchError("declared shape does not match entries")
        return m

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.to_rows()], dtype=float).reshape(self.rows, self.cols)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.to_rows())
        return f"RatMatrix[{body}]"


# ---------------- products ----------------
def commutator(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return a @ b - b @ a


def pair(a: RatMatrix, b: RatMatrix) -> Fraction:
    """Trace pairing (A, B) = Tr(AB)."""
    if a.shape != (b.cols, b.rows):
        raise DimensionMismatchError(f"cannot pair {a.shape} with {b.shape}")
    return sum((a[i, j] * b[j, i] for i in range(a.rows) for j in range(a.cols)
                if a[i, j] and b[j, i]), Fraction(0))


def mat_mul_rows(a: Rows, b: Rows) -> List[List[Any]]:
    """Product of two row lists over any commutative ring of scalars (duals included)."""
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), 0) for c in cols] for r in a]


# ---------------- determinants ----------------
def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _dual_det(rows: Rows) -> DualRational:
    k = len(rows)
    entries = []
    for r in rows:
        row = []
        for x in r:
            d = x if isinstance(x, DualRational) else DualRational(x)
            row.append(_DUAL_RING.from_dict({(0,): to_qq(d.value), (1,): to_qq(d.derivative)}))
        entries.append(row)
    p = DomainMatrix(entries, (k, k), _DUAL_DOMAIN).det()
    return DualRational(from_qq(p.get((0,), QQ.zero)), from_qq(p.get((1,), QQ.zero)))


def det_rows(rows: Rows):
    """Determinant of a square row list of exact, float or dual scalars."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise DimensionMismatchError("determinant of a non-square matrix")
    if k == 0:
        return Fraction(1)
    if isinstance(rows, np.ndarray):
        return float(np.linalg.det(np.asarray(rows, dtype=float)))
    flat = [x for r in rows for x in r]
    if all(_is_exact(x) for x in flat):
        return from_qq(domain_matrix(rows).det())
    if all(_is_exact(x) or isinstance(x, DualRational) for x in flat):
        return _dual_det(rows)
    if all(isinstance(x, (int, float, np.floating, np.integer, Fraction)) for x in flat):
        return float(np.linalg.det(np.array(flat, dtype=float).reshape(k, k)))
    raise TypeError(f"no determinant for entries of type {type(flat[0]).__name__}")


def det(m: RatMatrix) -> Fraction:
    if not m.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    return from_qq(m.dm.det())


def adjugate(m: RatMatrix) -> RatMatrix:
    if not m.is_square:
        raise DimensionMismatchError("adjugate of a non-square matrix")
    if m.rows == 0:
        return m
    return RatMatrix.from_domain(m.dm.adjugate())


# ---------------- spans and solves ----------------
def _as_dm(obj: Union[RatMatrix, Iterable[Sequence]]) -> Optional[DomainMatrix]:
    if isinstance(obj, RatMatrix):
        return obj.dm
    vecs = [list(v.vec() if isinstance(v, RatMatrix) else v) for v in obj]
    if not vecs:
        return None
    if any(len(v) != len(vecs[0]) for v in vecs):
        raise DimensionMismatchError("vectors of different dimensions")
    return domain_matrix(vecs)


def rank(m: Union[RatMatrix, Iterable[Sequence]]) -> int:
    """Exact rank over Q; accepts a matrix or a sequence of row vectors."""
    a = _as_dm(m)
    if a is None or 0 in a.shape:
        return 0
    return a.rank()


def _stack(a: Optional[DomainMatrix], b: Optional[DomainMatrix]) -> Optional[DomainMatrix]:
    if a is None or b is None:
        return a if b is None else b
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(f"vectors of dimensions {a.shape[1]} and {b.shape[1]}")
    return a.vstack(b)


def span_equal(a: Iterable[Sequence], b: Iterable[Sequence]) -> bool:
    """True iff the rational spans of the two vector families coincide."""
    da, db = _as_dm(a), _as_dm(b)
    both = _stack(da, db)
    ra = 0 if da is None else da.rank()
    rb = 0 if db is None else db.rank()
    return ra == rb == (0 if both is None else both.rank())


def in_span(v: Sequence, basis: Iterable[Sequence]) -> bool:
    db, dv = _as_dm(basis), _as_dm([v])
    both = _stack(db, dv)
    return (0 if db is None else db.rank()) == both.rank()


def nullspace(m: RatMatrix) -> List[Vector]:
    """Basis of {x : m x = 0} over Q."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)]
    return [tuple(from_qq(x) for x in r) for r in m.dm.nullspace().to_list()]


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square:
        raise DimensionMismatchError("inverse of a non-square matrix")
    try:
        return RatMatrix.from_domain(m.dm.inv())
    except DMNonInvertibleMatrixError as e:
        raise SingularMatrixError("matrix is singular") from e


def solve(m: RatMatrix, b: Sequence) -> Vector:
    """Unique solution of m x = b; raises SingularMatrixError otherwise."""
    if m.rows != len(b):
        raise DimensionMismatchError("right-hand side length mismatch")
    n = m.cols
    augmented = m.dm.hstack(domain_matrix([[x] for x in b], 1))
    reduced, pivots = augmented.rref()
    if n in pivots:
        raise SingularMatrixError("inconsistent linear system")
    if list(pivots) != list(range(n)):
        raise SingularMatrixError("linear system has no unique solution")
    column = reduced.to_list()
    return tuple(from_qq(column[i][n]) for i in range(n))


def pfaffian(m: RatMatrix) -> Fraction:
    """Exact Pfaffian of a skew-symmetric matrix by congruence elimination.

    sympy has no Pfaffian; the pivots here are QQ elements of the DomainMatrix.
    """
    if not m.is_square:
        raise DimensionMismatchError("Pfaffian of a non-square matrix")
    if m != -m.T:
        raise ValueError("Pfaffian needs a skew-symmetric matrix")
    n = m.rows
    if n % 2:
        return Fraction(0)
    a = m.dm.to_list()
    result = QQ.one
    for k in range(0, n - 1, 2):
        p = next((i for i in range(k + 1, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k + 1:
            a[k + 1], a[p] = a[p], a[k + 1]
            for row in a:
                row[k + 1], row[p] = row[p], row[k + 1]
            result = -result
        result *= a[k][k + 1]
        for i in range(k + 2, n):
            f = a[i][k] / a[k + 1][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k + 1])]
                for row in a:
                    row[i] -= f * row[k + 1]
    return from_qq(result)
