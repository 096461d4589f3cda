"""Exact scalar and dense-matrix kernels over the integers and rationals.

Everything here is exact: integers are Python ints, rationals are
``fractions.Fraction`` (kept canonical by the stdlib: positive denominator,
fully reduced). Floating point is rejected at the door and never enters any
code path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    SingularMatrixError,
    SingularUpdateError,
)

Scalar = Union[int, Fraction]


class Matrix:
    """Immutable dense matrix stored as a tuple of columns.

    Columns are the primary axis: the algorithms in this package treat a
    matrix as an ordered list of generator vectors. Entries are ints or
    Fractions; shape is fixed at construction and every "update" returns a
    new matrix (unchanged columns are shared, which is unobservable).
    """

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, columns: Iterable[Sequence[Scalar]], *, rows: int | None = None):
        cols = tuple(tuple(col) for col in columns)
        if rows is None:
            if not cols:
                raise DimensionMismatchError(
                    "a matrix without columns needs an explicit row count"
                )
            rows = len(cols[0])
        for col in cols:
            if len(col) != rows:
                raise DimensionMismatchError(
                    f"column of length {len(col)} in a {rows}-row matrix"
                )
            for e in col:
                if not isinstance(e, (int, Fraction)):
                    raise TypeError(
                        f"matrix entries must be int or Fraction, got {type(e).__name__}"
                    )
        self.rows = rows
        self.cols = len(cols)
        self._columns = cols

    @classmethod
    def from_rows(cls, rows_data: Iterable[Sequence[Scalar]]) -> "Matrix":
        rows_tup = tuple(tuple(r) for r in rows_data)
        if not rows_tup:
            raise DimensionMismatchError("from_rows needs at least one row")
        width = len(rows_tup[0])
        for r in rows_tup:
            if len(r) != width:
                raise DimensionMismatchError("rows of unequal length")
        return cls(
            tuple(tuple(r[j] for r in rows_tup) for j in range(width)),
            rows=len(rows_tup),
        )

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)),
            rows=n,
        )

    @property
    def columns(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._columns

    def column(self, j: int) -> tuple[Scalar, ...]:
        return self._columns[j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return tuple(col[i] for col in self._columns)

    def entry(self, i: int, j: int) -> Scalar:
        return self._columns[j][i]

    def with_column(self, j: int, column: Sequence[Scalar]) -> "Matrix":
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range for {self.cols} columns")
        return Matrix(
            self._columns[:j] + (tuple(column),) + self._columns[j + 1 :],
            rows=self.rows,
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.rows != self.rows:
            raise DimensionMismatchError("hstack needs matching row counts")
        return Matrix(self._columns + other._columns, rows=self.rows)

    def submatrix_rows(self, row_indices: Sequence[int]) -> "Matrix":
        idx = tuple(row_indices)
        return Matrix(
            tuple(tuple(col[i] for i in idx) for col in self._columns),
            rows=len(idx),
        )

    def transpose(self) -> "Matrix":
        return Matrix(tuple(self.row(i) for i in range(self.rows)), rows=self.cols)

    def mat_vec(self, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vec) != self.cols:
            raise DimensionMismatchError(
                f"vector of length {len(vec)} against {self.cols} columns"
            )
        out: list[Scalar] = [0] * self.rows
        for col, scale in zip(self._columns, vec):
            if scale:
                for i, e in enumerate(col):
                    out[i] += scale * e
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return Matrix(tuple(self.mat_vec(col) for col in other._columns), rows=self.rows)

    def is_integral(self) -> bool:
        return all(
            not isinstance(e, Fraction) or e.denominator == 1
            for col in self._columns
            for e in col
        )

    def to_int(self) -> "Matrix":
        """Copy with plain int entries; raises ValueError on fractional input."""
        out = []
        for col in self._columns:
            new_col = []
            for e in col:
                if isinstance(e, Fraction):
                    if e.denominator != 1:
                        raise ValueError(f"non-integral entry {e}")
                    e = int(e)
                new_col.append(e)
            out.append(tuple(new_col))
        return Matrix(tuple(out), rows=self.rows)

    def max_abs(self) -> Scalar:
        """Largest absolute entry (0 for an empty matrix)."""
        return max((abs(e) for col in self._columns for e in col), default=0)

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._columns == other._columns
        )

    def __hash__(self) -> int:
        return hash((self.rows, self._columns))

    def __repr__(self) -> str:
        if self.cols == 0:
            return f"Matrix((), rows={self.rows})"
        return f"Matrix.from_rows({self.to_rows()!r})"


def solve_system(b_mat: Matrix, rhs: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Solve ``b_mat @ x == rhs`` exactly for a square nonsingular matrix.

    Plain rational Gaussian elimination; the first nonzero entry of each
    column is the pivot (magnitude is irrelevant when nothing rounds).
    Raises SingularMatrixError if some column has no usable pivot.
    """
    n = b_mat.rows
    if b_mat.cols != n:
        raise DimensionMismatchError("solve_system needs a square matrix")
    if len(rhs) != n:
        raise DimensionMismatchError(
            f"right-hand side of length {len(rhs)} against {n} rows"
        )
    aug = [
        [Fraction(b_mat.entry(i, j)) for j in range(n)] + [Fraction(rhs[i])]
        for i in range(n)
    ]
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if aug[r][k]), None)
        if pivot_row is None:
            raise SingularMatrixError(f"no pivot in column {k}")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pivot = aug[k][k]
        for r in range(k + 1, n):
            f = aug[r][k] / pivot
            if f:
                row, prow = aug[r], aug[k]
                for c in range(k, n + 1):
                    row[c] -= f * prow[c]
    x: list[Fraction] = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        acc = aug[k][n]
        for j in range(k + 1, n):
            acc -= aug[k][j] * x[j]
        x[k] = acc / aug[k][k]
    return tuple(x)


def bareiss_det(b_mat: Matrix) -> int:
    """Exact determinant via fraction-free elimination.

    Intermediate values stay integral (each division is exact), so there is
    no rational bookkeeping at all. Singular input returns 0.
    """
    n = b_mat.rows
    if b_mat.cols != n:
        raise DimensionMismatchError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [[int(e) for e in row] for row in b_mat.to_int().to_rows()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for r in range(k + 1, n):
            row = a[r]
            head = row[k]
            for c in range(k + 1, n):
                row[c] = (row[c] * pivot - head * a[k][c]) // prev
            row[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def invert(b_mat: Matrix) -> Matrix:
    """Exact inverse of a square nonsingular matrix, as a Fraction matrix."""
    n = b_mat.rows
    if b_mat.cols != n:
        raise DimensionMismatchError("invert needs a square matrix")
    aug = [
        [Fraction(b_mat.entry(i, j)) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if aug[r][k]), None)
        if pivot_row is None:
            raise SingularMatrixError(f"no pivot in column {k}")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pivot = aug[k][k]
        if pivot != 1:
            aug[k] = [e / pivot for e in aug[k]]
        for r in range(n):
            if r == k:
                continue
            f = aug[r][k]
            if f:
                aug[r] = [e - f * p for e, p in zip(aug[r], aug[k])]
    return Matrix.from_rows([row[n:] for row in aug])


def column_update_inverse(b_inv: Matrix, i: int, new_column: Sequence[Scalar]) -> Matrix:
    """Inverse of the underlying matrix after replacing its column ``i``.

    Given ``b_inv == B**-1``, rewrites the cached inverse for
    ``B' = B with column i <- new_column`` using a rank-one correction in
    O(n^2) scalar operations instead of a fresh O(n^3) inversion. The
    replacement must keep the matrix nonsingular, which is exactly the
    condition ``(b_inv @ new_column)[i] != 0``.
    """
    n = b_inv.rows
    if b_inv.cols != n:
        raise DimensionMismatchError("column_update_inverse needs a square inverse")
    if len(new_column) != n:
        raise DimensionMismatchError(
            f"replacement column of length {len(new_column)} against {n} rows"
        )
    if not 0 <= i < n:
        raise IndexError(f"column {i} out of range")
    w = [Fraction(e) for e in b_inv.mat_vec(new_column)]
    if w[i] == 0:
        raise SingularUpdateError(
            "replacement column is linearly dependent on the remaining columns"
        )
    pivot_row = b_inv.row(i)
    out_rows = []
    for k in range(n):
        coef = (w[k] - (1 if k == i else 0)) / w[i]
        if coef:
            out_rows.append(
                tuple(b - coef * p for b, p in zip(b_inv.row(k), pivot_row))
            )
        else:
            out_rows.append(b_inv.row(k))
    return Matrix.from_rows(out_rows)


def lcm_denominators(vec: Iterable[Scalar]) -> int:
    """Positive lcm of all denominators; 1 for an empty or integral vector."""
    return math.lcm(1, *(q.denominator if isinstance(q, Fraction) else 1 for q in vec))
