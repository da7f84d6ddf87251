"""
Exact rational matrices for the etale-modules toolkit
Dense Fraction matrices, fraction-free elimination (rank, kernel, determinant)
and incremental span membership.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.models.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

Scalar = Fraction
Vector = Tuple[Fraction, ...]
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def to_vector(values: Iterable[ScalarLike]) -> Vector:
    return tuple(to_scalar(v) for v in values)


def format_scalar(value: Fraction) -> str:
    """Render a scalar as "p" or "p/q"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Mat:
    """Dense row-major matrix of exact rationals."""
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # Constructors

    @classmethod
    def build(cls, rows: int, cols: int, entries: Iterable[ScalarLike]) -> "Mat":
        return cls(rows, cols, to_vector(entries))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "Mat":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        entries = [ZERO] * (n * n)
        for i in range(n):
            entries[i * n + i] = ONE
        return cls(n, n, tuple(entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Mat":
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatchError("rows of unequal length")
        return cls(len(rows), width, tuple(to_scalar(x) for row in rows for x in row))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, value: ScalarLike = 1) -> "Mat":
        """Elementary matrix with a single entry at (i, j)."""
        entries = [ZERO] * (rows * cols)
        entries[i * cols + j] = to_scalar(value)
        return cls(rows, cols, tuple(entries))

    @classmethod
    def column(cls, values: Iterable[ScalarLike]) -> "Mat":
        vec = to_vector(values)
        return cls(len(vec), 1, vec)

    @staticmethod
    def block_diag(blocks: Sequence["Mat"]) -> "Mat":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        entries = [ZERO] * (rows * cols)
        r0 = c0 = 0
        for block in blocks:
            for i in range(block.rows):
                base = (r0 + i) * cols + c0
                src = i * block.cols
                for j in range(block.cols):
                    value = block.entries[src + j]
                    if value:
                        entries[base + j] = value
            r0 += block.rows
            c0 += block.cols
        return Mat(rows, cols, tuple(entries))

    def embed(self, size: int, offset: int) -> "Mat":
        """Place this square matrix on the diagonal of a size x size zero matrix."""
        if offset < 0 or offset + max(self.rows, self.cols) > size:
            raise DimensionMismatchError("block does not fit in the target matrix")
        entries = [ZERO] * (size * size)
        for i in range(self.rows):
            base = (offset + i) * size + offset
            for j in range(self.cols):
                value = self.entries[i * self.cols + j]
                if value:
                    entries[base + j] = value
        return Mat(size, size, tuple(entries))

    # Access

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Mat":
        cols = self.cols
        entries = self.entries
        return Mat(
            len(row_indices),
            len(col_indices),
            tuple(entries[i * cols + j] for i in row_indices for j in col_indices),
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatchError("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), ZERO)

    # Arithmetic

    def _check_same_shape(self, other: "Mat"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} does not match {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(
            (a + b) if b else a for a, b in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.rows, self.cols, tuple(
            (a - b) if b else a for a, b in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-a if a else ZERO for a in self.entries))

    def scale(self, factor: ScalarLike) -> "Mat":
        c = to_scalar(factor)
        if not c:
            return Mat.zeros(self.rows, self.cols)
        return Mat(self.rows, self.cols, tuple(a * c if a else ZERO for a in self.entries))

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def transpose(self) -> "Mat":
        return transpose(self)

    @property
    def T(self) -> "Mat":
        return transpose(self)

    def matvec(self, vec: Sequence[Fraction]) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(vec)} for a {self.rows}x{self.cols} matrix")
        support = [(j, v) for j, v in enumerate(vec) if v]
        cols = self.cols
        entries = self.entries
        out = []
        for i in range(self.rows):
            base = i * cols
            total = ZERO
            for j, v in support:
                a = entries[base + j]
                if a:
                    total += a * v
            out.append(total)
        return tuple(out)

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product, row-major: (A kron B)[(i,k),(j,l)] = A[i,j] B[k,l]."""
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        entries = [ZERO] * (rows * cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i * self.cols + j]
                if not a:
                    continue
                for k in range(other.rows):
                    base = (i * other.rows + k) * cols + j * other.cols
                    for l in range(other.cols):
                        b = other.entries[k * other.cols + l]
                        if b:
                            entries[base + l] = a * b
        return Mat(rows, cols, tuple(entries))

    def power(self, k: int) -> "Mat":
        if not self.is_square:
            raise DimensionMismatchError("power of a non-square matrix")
        result = Mat.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result


def matmul(a: Mat, b: Mat) -> Mat:
    """Exact product a @ b."""
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    n, m, p = a.rows, a.cols, b.cols
    b_rows = [
        [(j, b.entries[k * p + j]) for j in range(p) if b.entries[k * p + j]]
        for k in range(m)
    ]
    out = [ZERO] * (n * p)
    for i in range(n):
        base = i * p
        for k in range(m):
            aik = a.entries[i * m + k]
            if not aik:
                continue
            for j, bkj in b_rows[k]:
                out[base + j] += aik * bkj
    return Mat(n, p, tuple(out))


def transpose(a: Mat) -> Mat:
    return Mat(a.cols, a.rows, tuple(
        a.entries[i * a.cols + j] for j in range(a.cols) for i in range(a.rows)
    ))


@dataclass(frozen=True)
class Elimination:
    """Result of eliminating a matrix: rank, kernel basis and (square case) determinant."""
    rank: int
    kernel_basis: Tuple[Vector, ...]
    det: Optional[Fraction]
    pivots: Tuple[int, ...]


def _integer_rows(m: Mat) -> Tuple[List[List[int]], int]:
    """Scale every row to integers; returns the rows and the product of the scalings."""
    rows = []
    multiplier = 1
    for i in range(m.rows):
        row = m.row(i)
        d = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([x.numerator * (d // x.denominator) for x in row])
        multiplier *= d
    return rows, multiplier


def _fraction_free_echelon(rows: List[List[int]], ncols: int) -> Tuple[List[int], int]:
    """Bareiss elimination in place; first non-zero pivot in column order.

    Every entry stays a minor of the input, so the division by the previous
    pivot is exact. Returns the pivot columns and the sign of the row swaps.
    """
    nrows = len(rows)
    pivots: List[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        pivot_row = rows[r]
        pivot = pivot_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    a = row[j]
                    b = pivot_row[j]
                    if a or b:
                        row[j] = (pivot * a - f * b) // prev
            elif pivot != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = row[j] * pivot // prev
            row[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return pivots, sign


def _back_substitute(rows: List[List[int]], pivots: List[int], ncols: int) -> Tuple[Vector, ...]:
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = rows[k]
            total = ZERO
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    total += row[j] * x[j]
            x[c] = -total / row[c]
        basis.append(tuple(x))
    return tuple(basis)


def eliminate(m: Mat) -> Elimination:
    """Exact rank, kernel basis and determinant (square matrices only) of m."""
    rows, multiplier = _integer_rows(m)
    pivots, sign = _fraction_free_echelon(rows, m.cols)
    rank = len(pivots)
    kernel = _back_substitute(rows, pivots, m.cols)
    det: Optional[Fraction] = None
    if m.is_square:
        if m.rows == 0:
            det = ONE
        elif rank < m.rows:
            det = ZERO
        else:
            det = Fraction(sign * rows[m.rows - 1][m.cols - 1], multiplier)
    logger.debug("eliminated %dx%d matrix: rank %d", m.rows, m.cols, rank)
    return Elimination(rank=rank, kernel_basis=kernel, det=det, pivots=tuple(pivots))


def rank(m: Mat) -> int:
    return eliminate(m).rank


def kernel(m: Mat) -> Tuple[Vector, ...]:
    return eliminate(m).kernel_basis


def det(m: Mat) -> Fraction:
    if not m.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    return eliminate(m).det


def columns_to_mat(columns: Sequence[Sequence[Fraction]], rows: int) -> Mat:
    """Assemble a rows x len(columns) matrix from column vectors."""
    for column in columns:
        if len(column) != rows:
            raise DimensionMismatchError("column of the wrong length")
    return Mat(rows, len(columns), tuple(
        columns[j][i] for i in range(rows) for j in range(len(columns))
    ))


def _sparse(vec: Union[Sequence[Fraction], Dict[int, Fraction]]) -> Dict[int, Fraction]:
    if isinstance(vec, dict):
        return {i: x for i, x in vec.items() if x}
    return {i: x for i, x in enumerate(vec) if x}


class Span:
    """Incremental echelon basis of a list of vectors.

    Generators are numbered in the order they were accepted; coordinates()
    expresses a vector in those generators.
    """

    def __init__(self, length: int):
        self.length = length
        # (pivot, row, combination of generators equal to row)
        self._rows: List[Tuple[int, Dict[int, Fraction], Dict[int, Fraction]]] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
        if not isinstance(vec, dict) and len(vec) != self.length:
            raise DimensionMismatchError(f"vector of length {len(vec)} in a span of length {self.length}")
        residual = _sparse(vec)
        combo: Dict[int, Fraction] = {}
        for pivot, row, row_combo in self._rows:
            c = residual.get(pivot)
            if not c:
                continue
            for i, x in row.items():
                value = residual.get(i, ZERO) - c * x
                if value:
                    residual[i] = value
                else:
                    residual.pop(i, None)
            for g, y in row_combo.items():
                value = combo.get(g, ZERO) + c * y
                if value:
                    combo[g] = value
                else:
                    combo.pop(g, None)
        return residual, combo

    def add(self, vec) -> bool:
        """Accept vec as the next generator; False (and not stored) if it is dependent."""
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        index = len(self._rows)
        row_combo = {g: -y for g, y in combo.items()}
        row_combo[index] = ONE
        pivot = min(residual)
        scale = residual[pivot]
        row = {i: x / scale for i, x in residual.items()}
        row_combo = {g: y / scale for g, y in row_combo.items()}
        self._rows.append((pivot, row, row_combo))
        return True

    def contains(self, vec) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def coordinates_sparse(self, vec) -> Optional[Dict[int, Fraction]]:
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return combo

    def coordinates(self, vec) -> Optional[Vector]:
        combo = self.coordinates_sparse(vec)
        if combo is None:
            return None
        return tuple(combo.get(g, ZERO) for g in range(self.dim))
