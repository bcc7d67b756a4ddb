"""Dense matrices over Q(i, sqrt 2) with 1-based indexing.

Indices follow the usual mathematical convention, ``m[i, j]`` with
``1 <= i <= rows`` and ``1 <= j <= cols``, so the tensor product formula
``R[p*(i-1)+k, q*(j-1)+l] = M[i, j] * N[k, l]`` transcribes verbatim.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import IndexOutOfRange, ShapeMismatch
from .field import ONE, ZERO, Amplitude, RealRadical


class Matrix:
    """Immutable ``rows x cols`` matrix of :class:`Amplitude` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(Amplitude.coerce(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ShapeMismatch("ragged rows: every row must have the same length")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def create(cls, m: int, n: int, f: Callable[[int, int], object]) -> "Matrix":
        """Build the matrix whose ``(i, j)`` entry is ``f(i, j)`` (1-based)."""
        if m < 1 or n < 1:
            raise ShapeMismatch(f"matrix dimensions must be positive, got {m}x{n}")
        return cls([[f(i, j) for j in range(1, n + 1)] for i in range(1, m + 1)])

    @classmethod
    def column(cls, values: Iterable) -> "Matrix":
        return cls([[v] for v in values])

    @classmethod
    def zero(cls, m: int, n: int) -> "Matrix":
        return cls.create(m, n, lambda i, j: ZERO)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.create(n, n, lambda i, j: ONE if i == j else ZERO)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRange(
                f"index ({i}, {j}) outside 1..{self.rows} x 1..{self.cols}"
            )

    def __getitem__(self, idx) -> Amplitude:
        i, j = idx
        self._check(i, j)
        return self._data[i - 1][j - 1]

    def entry(self, i: int, j: int) -> Amplitude:
        return self[i, j]

    def to_rows(self) -> list[list[Amplitude]]:
        return [list(row) for row in self._data]

    def column_values(self) -> list[Amplitude]:
        """Entries of a single-column matrix, top to bottom."""
        if self.cols != 1:
            raise ShapeMismatch(f"expected a column vector, got {self.rows}x{self.cols}")
        return [row[0] for row in self._data]

    def __iter__(self):
        for row in self._data:
            yield from row

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def _same_shape(self, other: "Matrix", what: str) -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(
                f"cannot {what} {self.rows}x{self.cols} and {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "add")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self._data])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other, "subtract")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def scale(self, s) -> "Matrix":
        s = Amplitude.coerce(s)
        return Matrix([[s * a for a in row] for row in self._data])

    def __rmul__(self, s) -> "Matrix":
        return self.scale(s)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = list(zip(*other._data))
        out = []
        for row in self._data:
            out_row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out)

    def tensor(self, other: "Matrix") -> "Matrix":
        return tensor(self, other)

    def conj_transpose(self) -> "Matrix":
        return Matrix([[a.conj() for a in col] for col in zip(*self._data)])

    def is_unitary(self) -> bool:
        return is_unitary(self)

    def approx(self) -> np.ndarray:
        return np.array([[a.approx() for a in row] for row in self._data], dtype=complex)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[a.to_json() for a in row] for row in self._data],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        m = cls([[Amplitude.from_json(a) for a in row] for row in data["entries"]])
        if m.shape != (data["rows"], data["cols"]):
            raise ShapeMismatch(
                f"declared shape {data['rows']}x{data['cols']} but entries are {m.rows}x{m.cols}"
            )
        return m

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in row) for row in self._data)
        return f"Matrix[{body}]"


def mat_eq(a: Matrix, b: Matrix) -> bool:
    a._same_shape(b, "compare")
    return a == b


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_scale(s, a: Matrix) -> Matrix:
    return a.scale(s)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def tensor(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: entry ``(p(i-1)+k, q(j-1)+l)`` is ``a[i, j] * b[k, l]``."""
    p, q = b.rows, b.cols
    return Matrix.create(
        a.rows * p,
        a.cols * q,
        lambda r, c: a[(r - 1) // p + 1, (c - 1) // q + 1] * b[(r - 1) % p + 1, (c - 1) % q + 1],
    )


def conj_transpose(a: Matrix) -> Matrix:
    return a.conj_transpose()


def is_unitary(a: Matrix) -> bool:
    """Exact check of ``a^dagger a == I``; raises ShapeMismatch if ``a`` is not square."""
    if a.rows != a.cols:
        raise ShapeMismatch(f"unitarity needs a square matrix, got {a.rows}x{a.cols}")
    return a.conj_transpose() @ a == Matrix.identity(a.rows)


def vector_norm_sq(v: Matrix) -> RealRadical:
    """Squared Euclidean length of a column vector, kept inside Q(sqrt 2)."""
    if v.cols != 1:
        raise ShapeMismatch(f"expected a column vector, got {v.rows}x{v.cols}")
    total = RealRadical()
    for a in v:
        total = total + a.abs_sq()
    return total
