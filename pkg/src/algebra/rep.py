"""
Representations for the etale-modules toolkit
Operator assignments on a module, the beta map, prehomogeneity and etale
verdicts, stabilizer subalgebras and restriction to stabilizers.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.algebra.exactmat import (
    ONE, ZERO, Elimination, Mat, Span, Vector, columns_to_mat, eliminate, to_vector,
)
from src.algebra.liealg import LieAlgebra
from src.models.entities import Summand, VerificationReport, Verdict
from src.models.errors import (
    ChainMismatchError, DimensionMismatchError, InvalidAlgebraError,
    NotNilpotentError, SummandIndexError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Representation:
    """A Lie algebra acting on a module of dimension dim_v, one operator per basis element."""
    algebra: LieAlgebra
    dim_v: int
    operators: Tuple[Mat, ...]
    summands: Tuple[Summand, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.operators) != self.algebra.dim:
            raise DimensionMismatchError(
                f"{len(self.operators)} operators for a {self.algebra.dim}-dimensional algebra"
            )
        for op in self.operators:
            if op.shape != (self.dim_v, self.dim_v):
                raise DimensionMismatchError(f"operator of shape {op.shape} on a {self.dim_v}-dimensional module")
        if sum(s.dimension for s in self.summands) != self.dim_v:
            raise DimensionMismatchError("summand dimensions do not add up to the module dimension")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.dim_v == other.dim_v
            and self.operators == other.operators
        )

    def __hash__(self) -> int:
        return hash((self.dim_v, self.operators))

    @property
    def dim_g(self) -> int:
        return self.algebra.dim

    def operator(self, coords: Sequence) -> Mat:
        """Operator of the algebra element with the given coordinates."""
        coords = to_vector(coords)
        if len(coords) != self.dim_g:
            raise DimensionMismatchError(f"{len(coords)} coordinates for a {self.dim_g}-dimensional algebra")
        out = Mat.zeros(self.dim_v)
        for c, op in zip(coords, self.operators):
            if c:
                out = out + op.scale(c)
        return out

    def summand_coordinates(self, index: int) -> range:
        if not 0 <= index < len(self.summands):
            raise SummandIndexError(f"summand {index} out of range (module has {len(self.summands)})")
        s = self.summands[index]
        return range(s.offset, s.stop)

    def relabel(self, label: str, summand_labels: Optional[Sequence[str]] = None) -> "Representation":
        summands = self.summands
        if summand_labels is not None:
            if len(summand_labels) != len(summands):
                raise DimensionMismatchError("one label per summand expected")
            summands = tuple(
                Summand(lab, s.dimension, s.offset, s.shape) for lab, s in zip(summand_labels, summands)
            )
        return Representation(self.algebra, self.dim_v, self.operators, summands, label)


def _single(label: str, dim: int, shape=None) -> Tuple[Summand, ...]:
    return (Summand(label, dim, 0, shape),)


# Constructors

def standard_rep(L: LieAlgebra) -> Representation:
    """Each basis matrix acts by itself on the ambient space."""
    return Representation(L, L.ambient, L.basis, _single("std", L.ambient), f"std[{L.label}]")


def trivial_rep(L: LieAlgebra, dim: int = 1) -> Representation:
    zero = Mat.zeros(dim)
    return Representation(L, dim, (zero,) * L.dim, _single("trivial", dim), f"trivial^{dim}")


def factor_standard_rep(L: LieAlgebra, factor_index: int, slot: Optional[int] = None) -> Representation:
    """Standard module of one factor, the other factors acting by zero.

    With slot larger than the factor's size the factor acts as diag(A, 0).
    """
    if not 0 <= factor_index < len(L.factors):
        raise InvalidAlgebraError(f"factor {factor_index + 1} does not exist in {L.label}")
    factor = L.factors[factor_index]
    size = factor.ambient_size
    slot = size if slot is None else slot
    if slot < size:
        raise ChainMismatchError(f"slot of size {slot} cannot hold {factor.label}")
    block = range(factor.ambient_start, factor.ambient_stop)
    ops = []
    for X in L.basis:
        A = X.submatrix(block, block)
        ops.append(A if slot == size else A.embed(slot, 0))
    label = f"std({factor_index + 1})"
    return Representation(L, slot, tuple(ops), _single(label, slot), label)


def dual_rep(R: Representation) -> Representation:
    """X acts by -X^T."""
    ops = tuple(-op.transpose() for op in R.operators)
    summands = tuple(
        Summand(_dual_label(s.label), s.dimension, s.offset, s.shape) for s in R.summands
    )
    return Representation(R.algebra, R.dim_v, ops, summands, _dual_label(R.label))


def _dual_label(label: str) -> str:
    if label.startswith("dual(") and label.endswith(")"):
        return label[5:-1]
    return f"dual({label})"


def factor_dual_rep(L: LieAlgebra, factor_index: int) -> Representation:
    return dual_rep(factor_standard_rep(L, factor_index))


def _same_algebra(reps: Sequence[Representation]):
    first = reps[0].algebra
    for R in reps[1:]:
        if R.algebra is not first and R.algebra != first:
            raise DimensionMismatchError("representations act through different algebras")


def tensor_rep(R1: Representation, R2: Representation) -> Representation:
    """X acts by X1 kron I + I kron X2 on the Kronecker-ordered basis."""
    _same_algebra([R1, R2])
    I1 = Mat.identity(R1.dim_v)
    I2 = Mat.identity(R2.dim_v)
    ops = []
    for A, B in zip(R1.operators, R2.operators):
        if A.is_zero() and B.is_zero():
            ops.append(Mat.zeros(R1.dim_v * R2.dim_v))
        elif B.is_zero():
            ops.append(A.kron(I2))
        elif A.is_zero():
            ops.append(I1.kron(B))
        else:
            ops.append(A.kron(I2) + I1.kron(B))
    label = f"{R1.label}*{R2.label}"
    shape = (R1.dim_v, R2.dim_v)
    return Representation(R1.algebra, R1.dim_v * R2.dim_v, tuple(ops), _single(label, shape[0] * shape[1], shape), label)


def direct_sum_rep(reps: Sequence[Representation]) -> Representation:
    """Block-diagonal sum; summands keep their labels and shapes."""
    if not reps:
        raise DimensionMismatchError("direct sum of an empty list")
    if len(reps) == 1:
        return reps[0]
    _same_algebra(reps)
    dim = sum(R.dim_v for R in reps)
    ops = tuple(
        Mat.block_diag([R.operators[i] for R in reps]) for i in range(reps[0].dim_g)
    )
    summands = []
    offset = 0
    for R in reps:
        for s in R.summands:
            summands.append(Summand(s.label, s.dimension, offset + s.offset, s.shape))
        offset += R.dim_v
    label = " + ".join(R.label for R in reps)
    return Representation(reps[0].algebra, dim, ops, tuple(summands), label)


def lift_rep(R: Representation, L: LieAlgebra, basis_offset: int) -> Representation:
    """Extend R to a product algebra whose basis contains R's algebra at basis_offset."""
    if basis_offset < 0 or basis_offset + R.dim_g > L.dim:
        raise DimensionMismatchError("the algebra does not fit at that basis offset")
    zero = Mat.zeros(R.dim_v)
    ops = [zero] * L.dim
    ops[basis_offset:basis_offset + R.dim_g] = R.operators
    return Representation(L, R.dim_v, tuple(ops), R.summands, R.label)


def traceless_basis(size: int) -> List[Mat]:
    """H_i = E_ii - E_{i+1,i+1}, then off-diagonal E_ij row-major."""
    basis = [Mat.unit(size, size, i, i) - Mat.unit(size, size, i + 1, i + 1) for i in range(size - 1)]
    basis += [Mat.unit(size, size, i, j) for i in range(size) for j in range(size) if i != j]
    return basis


def _traceless_coordinates(M: Mat) -> Vector:
    size = M.rows
    coords = []
    running = ZERO
    for i in range(size - 1):
        running += M[i, i]
        coords.append(running)
    coords += [M[i, j] for i in range(size) for j in range(size) if i != j]
    return tuple(coords)


def adjoint_traceless_rep(L: LieAlgebra, factor_index: int) -> Representation:
    """A factor acting on its traceless matrices by U -> [A, U]."""
    factor = L.factors[factor_index]
    size = factor.ambient_size
    block = range(factor.ambient_start, factor.ambient_stop)
    basis = traceless_basis(size)
    dim = len(basis)
    ops = []
    for X in L.basis:
        A = X.submatrix(block, block)
        if A.is_zero():
            ops.append(Mat.zeros(dim))
            continue
        columns = [_traceless_coordinates(A @ U - U @ A) for U in basis]
        ops.append(columns_to_mat(columns, dim))
    label = f"ad0({factor_index + 1})"
    return Representation(L, dim, tuple(ops), _single(label, dim), label)


def chain_rep(L: LieAlgebra, slots: Optional[Sequence[int]] = None) -> Representation:
    """The chain module Mat_{m,m-1} + ... + Mat_{2,1}.

    Factor k acts on slot k; on Mat_{a,b} the pair (A, B) acts by AX + XB^T,
    which in row-major coordinates is A kron I + I kron B.
    """
    if slots is None:
        slots = [f.ambient_size for f in L.factors]
    slots = list(slots)
    if len(slots) != len(L.factors):
        raise ChainMismatchError("one slot per factor expected")
    m = len(slots)
    if m < 2 or slots != list(range(m, 0, -1)):
        raise ChainMismatchError(
            f"factor sizes {slots} do not form a chain m, m-1, ..., 1"
        )
    pieces = []
    labels = []
    for k in range(m - 1):
        upper = factor_standard_rep(L, k, slots[k])
        lower = factor_standard_rep(L, k + 1, slots[k + 1])
        pieces.append(tensor_rep(upper, lower))
        labels.append(f"Mat_{slots[k]},{slots[k + 1]}")
    R = direct_sum_rep(pieces)
    expected = sum((k + 1) * k for k in range(1, m))
    if R.dim_v != expected:
        raise ChainMismatchError(f"chain module has dimension {R.dim_v}, expected {expected}")
    return R.relabel(f"E_{m}", labels)


# Homomorphism check

def check_homomorphism(R: Representation) -> List[Tuple[int, int]]:
    """Basis pairs (i, j) with op([b_i, b_j]) != [op(b_i), op(b_j)]."""
    c = R.algebra.structure_constants
    if c is None:
        raise InvalidAlgebraError(f"{R.algebra.label} is not closed under the bracket")
    failures = []
    ops = R.operators
    for i in range(R.dim_g):
        for j in range(i + 1, R.dim_g):
            lhs = Mat.zeros(R.dim_v)
            for k, coeff in c[i][j].items():
                lhs = lhs + ops[k].scale(coeff)
            rhs = ops[i] @ ops[j] - ops[j] @ ops[i]
            if lhs != rhs:
                failures.append((i, j))
    return failures


def is_homomorphism(R: Representation) -> bool:
    return not check_homomorphism(R)


# The beta map and verdicts

def _point(R: Representation, x: Sequence) -> Vector:
    vec = to_vector(x)
    if len(vec) != R.dim_v:
        raise DimensionMismatchError(f"point of length {len(vec)} for a {R.dim_v}-dimensional module")
    return vec


def beta_matrix(R: Representation, x: Sequence) -> Mat:
    """dim_v x dim_g matrix whose i-th column is op(b_i) x."""
    vec = _point(R, x)
    return columns_to_mat([op.matvec(vec) for op in R.operators], R.dim_v)


def is_prehomogeneous_at(R: Representation, x: Sequence) -> bool:
    return eliminate(beta_matrix(R, x)).rank == R.dim_v


def _verdict(dim_g: int, dim_v: int, rank: int) -> Verdict:
    if rank < dim_v:
        return Verdict.NOT_PREHOMOGENEOUS
    return Verdict.ETALE if dim_g == dim_v else Verdict.PREHOMOGENEOUS_NOT_ETALE


def is_etale_at(
    R: Representation,
    x: Sequence,
    description: str = "",
    citations: Sequence[str] = (),
) -> VerificationReport:
    """Full report of the beta-map check at x."""
    vec = _point(R, x)
    elim = eliminate(beta_matrix(R, vec))
    det_nonzero = None if elim.det is None else elim.det != 0
    verdict = _verdict(R.dim_g, R.dim_v, elim.rank)
    logger.info("%s: rank %d, dim g %d, dim V %d -> %s",
                description or R.label, elim.rank, R.dim_g, R.dim_v, verdict.value)
    return VerificationReport(
        description=description or R.label,
        dim_g=R.dim_g,
        dim_v=R.dim_v,
        point=vec,
        rank_beta=elim.rank,
        det_nonzero=det_nonzero,
        verdict=verdict,
        stabilizer_dim=R.dim_g - elim.rank,
        stabilizer_basis=list(elim.kernel_basis),
        citations=list(citations),
    )


def stabilizer_algebra(R: Representation, x: Sequence) -> List[Vector]:
    """Basis of ker(beta) in algebra coordinates."""
    return list(eliminate(beta_matrix(R, x)).kernel_basis)


def line_stabilizer_algebra(R: Representation, x: Sequence) -> List[Vector]:
    """Basis of {X : op(X) x in span(x)}."""
    vec = _point(R, x)
    if not any(vec):
        raise DimensionMismatchError("the line stabilizer needs a non-zero point")
    columns = [op.matvec(vec) for op in R.operators] + [vec]
    elim = eliminate(columns_to_mat(columns, R.dim_v))
    # x != 0, so dropping the last coordinate is injective on the kernel
    return [v[:-1] for v in elim.kernel_basis]


# Restriction to stabilizers

@dataclass
class Restriction:
    """Stabilizer of a point on an invariant block, acting on the complementary block."""
    representation: Representation
    stabilizer_basis: List[Vector]
    fixed: Tuple[int, ...]
    remaining: Tuple[int, ...]
    rank: int
    trivial_dim: int

    @property
    def fixed_dim(self) -> int:
        return len(self.fixed)

    @property
    def prehomogeneous(self) -> bool:
        return self.rank == self.fixed_dim

    @property
    def kernel_dim(self) -> int:
        return len(self.stabilizer_basis)

    @property
    def effective_kernel_dim(self) -> int:
        """Stabilizer dimension modulo the part acting trivially on the fixed block."""
        return self.kernel_dim - self.trivial_dim


def _check_invariant(R: Representation, fixed: Sequence[int], remaining: Sequence[int]):
    for index, op in enumerate(R.operators):
        if any(op.submatrix(remaining, fixed).entries) or any(op.submatrix(fixed, remaining).entries):
            raise DimensionMismatchError(
                f"basis element {index} mixes the fixed block with its complement"
            )


def restrict_on_coordinates(R: Representation, coordinates: Sequence[int], x_part: Sequence) -> Restriction:
    """Fix x_part on the given coordinates; the stabilizer then acts on the rest."""
    fixed = tuple(sorted(set(coordinates)))
    if any(not 0 <= c < R.dim_v for c in fixed):
        raise DimensionMismatchError("coordinate outside the module")
    order = {c: i for i, c in enumerate(coordinates)}
    values = to_vector(x_part)
    if len(values) != len(fixed) or len(order) != len(coordinates):
        raise DimensionMismatchError(f"{len(values)} values for {len(fixed)} coordinates")
    point = tuple(values[order[c]] for c in fixed)
    fixed_set = set(fixed)
    remaining = tuple(c for c in range(R.dim_v) if c not in fixed_set)
    _check_invariant(R, fixed, remaining)

    blocks = [op.submatrix(fixed, fixed) for op in R.operators]
    elim: Elimination = eliminate(columns_to_mat([B.matvec(point) for B in blocks], len(fixed)))
    acting = Span(len(fixed) ** 2)
    for B in blocks:
        acting.add(B.entries)
    trivial_dim = R.dim_g - acting.dim

    kernel = list(elim.kernel_basis)
    sub = R.algebra.subalgebra(kernel, f"stab[{R.algebra.label}]")
    tails = {}
    ops = []
    for v in kernel:
        restricted = Mat.zeros(len(remaining))
        for index, c in enumerate(v):
            if not c:
                continue
            if index not in tails:
                tails[index] = R.operators[index].submatrix(remaining, remaining)
            restricted = restricted + tails[index].scale(c)
        ops.append(restricted)

    summands = []
    position = 0
    remaining_set = set(remaining)
    for s in R.summands:
        kept = [c for c in range(s.offset, s.stop) if c in remaining_set]
        if not kept:
            continue
        partial = len(kept) != s.dimension
        summands.append(Summand(
            f"{s.label}|rest" if partial else s.label,
            len(kept),
            position,
            None if partial else s.shape,
        ))
        position += len(kept)
    restricted_rep = Representation(sub, len(remaining), tuple(ops), tuple(summands), f"{R.label}|stab")
    logger.debug("fixed %d coordinates: rank %d, stabilizer %d", len(fixed), elim.rank, len(kernel))
    return Restriction(restricted_rep, kernel, fixed, remaining, elim.rank, trivial_dim)


def restrict_to_stabilizer(
    R: Representation,
    summand_index: Union[int, Sequence[int]],
    x1: Sequence,
) -> Representation:
    """Stabilizer of x1 in the chosen summand(s), acting on the remaining summands."""
    indices = [summand_index] if isinstance(summand_index, int) else list(summand_index)
    coordinates: List[int] = []
    for index in indices:
        coordinates.extend(R.summand_coordinates(index))
    return restrict_on_coordinates(R, coordinates, x1).representation


def reduction_verdict(R: Representation, x: Sequence) -> Verdict:
    """Verdict obtained by restricting to stabilizers summand by summand."""
    vec = _point(R, x)
    current = R
    remaining = list(range(R.dim_v))
    while current.summands:
        coords = list(current.summand_coordinates(0))
        part = [vec[remaining[c]] for c in coords]
        step = restrict_on_coordinates(current, coords, part)
        if not step.prehomogeneous:
            return Verdict.NOT_PREHOMOGENEOUS
        remaining = [remaining[c] for c in step.remaining]
        current = step.representation
    return Verdict.ETALE if current.dim_g == 0 else Verdict.PREHOMOGENEOUS_NOT_ETALE


# Points

def random_point(R: Union[Representation, int], bound: int, seed: int) -> Vector:
    """Integer entries drawn uniformly from [-bound, bound], deterministic in seed."""
    if bound < 1:
        raise InvalidAlgebraError("the sampling bound must be at least 1")
    if seed < 0:
        raise InvalidAlgebraError(f"the seed must be non-negative, got {seed}")
    dim = R if isinstance(R, int) else R.dim_v
    rng = np.random.default_rng(seed)
    draws = rng.integers(-bound, bound, size=dim, endpoint=True)
    return tuple(Fraction(int(v)) for v in draws)


@dataclass
class CertifiedPoint:
    """A point with full beta rank and how it was found."""
    point: Vector
    rank: int
    used_fallback: bool
    attempts: int
    seeds_tried: List[int] = field(default_factory=list)


def certify_point(
    R: Representation,
    candidate: Optional[Sequence],
    bound: int = 10,
    seed: int = 0,
    attempts: int = 10,
) -> Optional[CertifiedPoint]:
    """First of candidate, random_point(seed), random_point(seed + 1), ... with full rank."""
    tried = 0
    if candidate is not None:
        vec = _point(R, candidate)
        tried += 1
        r = eliminate(beta_matrix(R, vec)).rank
        if r == R.dim_v:
            return CertifiedPoint(vec, r, False, tried)
        logger.info("candidate point for %s has rank %d < %d, drawing random points", R.label, r, R.dim_v)
    seeds = []
    for s in range(seed, seed + attempts):
        vec = random_point(R, bound, s)
        seeds.append(s)
        tried += 1
        r = eliminate(beta_matrix(R, vec)).rank
        if r == R.dim_v:
            return CertifiedPoint(vec, r, candidate is not None, tried, seeds)
    logger.warning("no point of full rank found for %s after %d attempts", R.label, tried)
    return None


def unipotent_translate(R: Representation, x: Sequence, N: Sequence) -> Vector:
    """exp(op(N)) x by the finite exponential series; op(N) must be nilpotent."""
    vec = _point(R, x)
    op = R.operator(N)
    power = op
    for _ in range(R.dim_v):
        if power.is_zero():
            break
        power = power @ op
    if not power.is_zero() and R.dim_v > 0:
        raise NotNilpotentError("the operator of N is not nilpotent")
    result = list(vec)
    term = vec
    k = 0
    while any(term):
        k += 1
        term = tuple(t / k for t in op.matvec(term))
        result = [a + b for a, b in zip(result, term)]
    return tuple(result)


def identity_block_point(R: Representation) -> Vector:
    """Ones on the leading diagonal of every matrix summand, last basis vector elsewhere."""
    point = [ZERO] * R.dim_v
    for s in R.summands:
        if s.dimension == 0:
            continue
        if s.shape is not None and min(s.shape) > 0:
            rows, cols = s.shape
            for i in range(min(rows, cols)):
                point[s.offset + i * cols + i] = ONE
        else:
            point[s.stop - 1] = ONE
    return tuple(point)
