"""
Matrix Lie algebras for the etale-modules toolkit
Classical algebras gl, sl, so, sp in fixed bases, block-diagonal products,
brackets, structure constants and axiom checks.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.algebra.exactmat import ONE, ZERO, Mat, Span, Vector, to_vector
from src.models.entities import Factor, FactorKind
from src.models.errors import DimensionMismatchError, InvalidAlgebraError

logger = logging.getLogger(__name__)

StructureConstants = Tuple[Tuple[Dict[int, object], ...], ...]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A Lie algebra given by an ordered basis of ambient x ambient matrices."""
    ambient: int
    basis: Tuple[Mat, ...]
    factors: Tuple[Factor, ...]
    label: str = ""

    def __post_init__(self):
        for X in self.basis:
            if X.shape != (self.ambient, self.ambient):
                raise DimensionMismatchError(
                    f"basis matrix of shape {X.shape} in an algebra of {self.ambient}x{self.ambient} matrices"
                )

    @classmethod
    def from_basis(cls, basis: Sequence[Mat], label: str = "") -> "LieAlgebra":
        """Wrap an arbitrary list of square matrices as a single-component algebra."""
        if not basis:
            raise InvalidAlgebraError("an explicit basis needs at least one matrix")
        ambient = basis[0].rows
        factor = Factor(FactorKind.PRODUCT_COMPONENT, ambient, 0, len(basis), 0, ambient)
        return cls(ambient, tuple(basis), (factor,), label or f"span({len(basis)})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    @cached_property
    def _span(self) -> Span:
        span = Span(self.ambient * self.ambient)
        for X in self.basis:
            span.add(X.entries)
        return span

    @property
    def is_independent(self) -> bool:
        return self._span.dim == self.dim

    def contains(self, X: Mat) -> bool:
        return self._span.contains(X.entries)

    def coordinates(self, X: Mat) -> Optional[Vector]:
        """Coordinates of X in the basis, or None when X is outside the span."""
        if not self.is_independent:
            raise InvalidAlgebraError("coordinates need a linearly independent basis")
        return self._span.coordinates(X.entries)

    def element(self, coords: Sequence) -> Mat:
        """The matrix sum of coords[i] * basis[i]."""
        coords = to_vector(coords)
        if len(coords) != self.dim:
            raise DimensionMismatchError(f"{len(coords)} coordinates for a {self.dim}-dimensional algebra")
        size = self.ambient * self.ambient
        out = [ZERO] * size
        for c, X in zip(coords, self.basis):
            if not c:
                continue
            for k, a in enumerate(X.entries):
                if a:
                    out[k] += c * a
        return Mat(self.ambient, self.ambient, tuple(out))

    def factor_block(self, X: Mat, factor_index: int) -> Mat:
        """The diagonal block of X belonging to one factor."""
        factor = self.factors[factor_index]
        block = range(factor.ambient_start, factor.ambient_stop)
        return X.submatrix(block, block)

    @cached_property
    def structure_constants(self) -> Optional[StructureConstants]:
        """Sparse c[i][j] = {k: c_ij^k} with [b_i, b_j] = sum_k c_ij^k b_k; None if not closed."""
        if not self.is_independent:
            return None
        d = self.dim
        table: List[List[Dict[int, object]]] = [[{} for _ in range(d)] for _ in range(d)]
        for i, j in combinations(range(d), 2):
            Z = bracket(self, self.basis[i], self.basis[j])
            coords = self._span.coordinates_sparse(Z.entries)
            if coords is None:
                logger.debug("bracket of basis elements %d, %d leaves the span of %s", i, j, self.label)
                return None
            table[i][j] = coords
            table[j][i] = {k: -c for k, c in coords.items()}
        return tuple(tuple(row) for row in table)

    def subalgebra(self, coordinate_vectors: Sequence[Sequence], label: str = "") -> "LieAlgebra":
        """Subalgebra spanned by the given coordinate vectors; keeps the ambient blocks."""
        basis = tuple(self.element(v) for v in coordinate_vectors)
        factors = tuple(
            Factor(f.kind, f.size, None, None, f.ambient_start, f.ambient_stop) for f in self.factors
        )
        return LieAlgebra(self.ambient, basis, factors, label or f"sub({self.label})")


def gram_matrix(kind: Union[FactorKind, str], n: int) -> Mat:
    """Gram matrix of the invariant form: omega(e_{2j-1}, e_{2j}) = 1 for sp, identity for so."""
    kind = FactorKind(kind)
    if kind is FactorKind.SO:
        return Mat.identity(n)
    if kind is FactorKind.SP:
        size = 2 * n
        entries = [ZERO] * (size * size)
        for j in range(n):
            entries[(2 * j) * size + 2 * j + 1] = ONE
            entries[(2 * j + 1) * size + 2 * j] = -ONE
        return Mat(size, size, tuple(entries))
    raise InvalidAlgebraError(f"{kind.value} has no invariant bilinear form")


def _normalize_sign(X: Mat) -> Mat:
    first = next(a for a in X.entries if a)
    return -X if first < 0 else X


def _gl_basis(n: int) -> List[Mat]:
    return [Mat.unit(n, n, i, j) for i in range(n) for j in range(n)]


def _sl_basis(n: int) -> List[Mat]:
    basis = [Mat.unit(n, n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        basis.append(Mat.unit(n, n, i, i) - Mat.unit(n, n, i + 1, i + 1))
    return basis


def _so_basis(n: int) -> List[Mat]:
    return [Mat.unit(n, n, i, j) - Mat.unit(n, n, j, i) for i in range(n) for j in range(i + 1, n)]


def _sp_basis(n: int) -> List[Mat]:
    # A = S J with S symmetric solves A^T J + J A = 0
    size = 2 * n
    J = gram_matrix(FactorKind.SP, n)
    basis = []
    for i in range(size):
        for j in range(i, size):
            S = Mat.unit(size, size, i, j)
            if i != j:
                S = S + Mat.unit(size, size, j, i)
            basis.append(_normalize_sign(S @ J))
    return basis


_BUILDERS = {
    FactorKind.GL: _gl_basis,
    FactorKind.SL: _sl_basis,
    FactorKind.SO: _so_basis,
    FactorKind.SP: _sp_basis,
}


def classical_algebra(kind: Union[FactorKind, str], n: int) -> LieAlgebra:
    """gl(n), sl(n), so(n) (form I_n) or sp(n) (on C^{2n}, interleaved pairs)."""
    kind = FactorKind(kind)
    if kind not in _BUILDERS:
        raise InvalidAlgebraError(f"{kind.value} is not a classical algebra")
    if n < 1:
        raise InvalidAlgebraError(f"{kind.value}({n}): size must be at least 1")
    basis = tuple(_BUILDERS[kind](n))
    ambient = 2 * n if kind is FactorKind.SP else n
    factor = Factor(kind, n, 0, len(basis), 0, ambient)
    return LieAlgebra(ambient, basis, (factor,), f"{kind.value}({n})")


def product(algebras: Sequence[LieAlgebra]) -> LieAlgebra:
    """Block-diagonal product; factor metadata records basis and ambient offsets."""
    if not algebras:
        raise InvalidAlgebraError("product of an empty list of algebras")
    ambient = sum(L.ambient for L in algebras)
    basis: List[Mat] = []
    factors: List[Factor] = []
    offset = 0
    for L in algebras:
        start = len(basis)
        basis.extend(X.embed(ambient, offset) for X in L.basis)
        for f in L.factors:
            b_start = None if f.basis_start is None else f.basis_start + start
            b_stop = None if f.basis_stop is None else f.basis_stop + start
            factors.append(Factor(
                f.kind, f.size, b_start, b_stop, f.ambient_start + offset, f.ambient_stop + offset,
            ))
        offset += L.ambient
    label = " x ".join(L.label for L in algebras)
    return LieAlgebra(ambient, tuple(basis), tuple(factors), label)


def bracket(L: LieAlgebra, X: Mat, Y: Mat) -> Mat:
    """Commutator XY - YX of two ambient-sized matrices."""
    shape = (L.ambient, L.ambient)
    if X.shape != shape or Y.shape != shape:
        raise DimensionMismatchError(f"bracket needs {shape[0]}x{shape[1]} matrices")
    return X @ Y - Y @ X


def _jacobi_holds(c: StructureConstants, i: int, j: int, k: int) -> bool:
    total: Dict[int, object] = {}
    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
        for l, a in c[y][z].items():
            for m, b in c[x][l].items():
                total[m] = total.get(m, ZERO) + a * b
    return not any(total.values())


def verify_lie_axioms(L: LieAlgebra) -> bool:
    """Independence, closure of all basis brackets and the Jacobi identity on basis triples."""
    if not L.is_independent:
        logger.warning("basis of %s is linearly dependent", L.label)
        return False
    c = L.structure_constants
    if c is None:
        logger.warning("%s is not closed under the bracket", L.label)
        return False
    for i, j, k in combinations(range(L.dim), 3):
        if not _jacobi_holds(c, i, j, k):
            logger.warning("Jacobi identity fails on %s at (%d, %d, %d)", L.label, i, j, k)
            return False
    return True
