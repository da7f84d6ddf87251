"""
Etale families for the etale-modules toolkit
Builders for the Sp-chain, the SO-chain, the Sp-chain on E_{2n+1} and the
Helmstetter module, their canonical points, dimension identities and the
level-by-level walk down their stabilizer chains.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from src.algebra.exactmat import ONE, ZERO, Mat, Vector
from src.algebra.liealg import LieAlgebra, classical_algebra, product
from src.algebra.rep import (
    CertifiedPoint, Representation, adjoint_traceless_rep, certify_point, chain_rep,
    direct_sum_rep, factor_standard_rep, is_etale_at, reduction_verdict,
    restrict_on_coordinates, tensor_rep,
)
from src.models.entities import (
    BlockPattern, ChainLevel, ChainReport, DimsTable, FactorKind, FamilyName,
    IdentityRow, LevelResult, Summand, Verdict,
)
from src.models.errors import EtaleError, InvalidAlgebraError, StabilizerChainError

logger = logging.getLogger(__name__)

LIE_LEVEL_NOTE = (
    "certificate is Lie-level: det(beta) != 0 shows an open orbit and a finite generic "
    "stabilizer; triviality of the stabilizer group is cited, not computed"
)

CITATIONS: Dict[FamilyName, List[str]] = {
    FamilyName.SP_CHAIN: [
        "Sp-chain theorem: (Sp_n x GL_{2n-1} x ... x GL_1, C^{2n} + E_{2n}) is super-etale",
        "Sp-chain lemma: the stabilizer of a generic point of C^{2n} + Mat_{2n,2n-1} is Sp_{n-1}",
        LIE_LEVEL_NOTE,
    ],
    FamilyName.SO_CHAIN: [
        "SO-chain theorem: (SO_n x GL_{n-1} x ... x GL_1, E_n) is etale with generic stabilizer Z_2",
        "SO-chain lemma: the stabilizer of (I_{n-1}; 0) in Mat_{n,n-1} is O_{n-1}",
        LIE_LEVEL_NOTE,
    ],
    FamilyName.SP_E_ONLY: [
        "Sp-chain remark: Sp_n x GL_{2n} x ... x GL_1 on E_{2n+1} is a second super-etale family",
        "group read as Sp_n acting on the top slot C^{2n+1} as diag(A, 0); dims balance under this reading",
        LIE_LEVEL_NOTE,
    ],
    FamilyName.HELMSTETTER: [
        "Helmstetter module: Sp_2 x GL_3 x GL_2 x GL_1 x GL_1 on C^4 + Mat_{4,3} + Mat_{3,2} + sl_2 "
        "is etale but not super-etale",
        "not super-etale: no super-etale claim is made for this module",
    ],
}


@dataclass
class FamilyInstance:
    """A constructed family member with its canonical point and expected chain."""
    family: FamilyName
    n: int
    algebra: LieAlgebra
    representation: Representation
    canonical_point: Vector
    expected_stabilizer_chain: List[ChainLevel] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)
    certified: Optional[CertifiedPoint] = None
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.canonical_point) != self.representation.dim_v:
            raise InvalidAlgebraError("canonical point does not match the module dimension")

    @property
    def used_fallback(self) -> bool:
        return bool(self.certified and self.certified.used_fallback)

    @property
    def point(self) -> Vector:
        """The certified point when there is one, the assembled canonical point otherwise."""
        return self.certified.point if self.certified else self.canonical_point

    @property
    def description(self) -> str:
        suffix = "" if self.family is FamilyName.HELMSTETTER else f" n={self.n}"
        return f"{self.family.value}{suffix}: {self.algebra.label} on {self.representation.label}"


# Dimension formulas

def dim_sp(n: int) -> int:
    return 2 * n * n + n


def dim_so(n: int) -> int:
    return n * (n - 1) // 2


def dim_chain(m: int) -> int:
    """dim E_m = sum of (k+1)k over k < m."""
    return sum((k + 1) * k for k in range(1, m))


def _squares(top: int) -> int:
    return sum(k * k for k in range(1, top + 1))


# Points and coordinates

def _mat_summands(R: Representation) -> Dict[int, Summand]:
    """Chain summands keyed by their row count."""
    return {s.shape[0]: s for s in R.summands if s.shape is not None and s.label.startswith("Mat_")}


def _rows(s: Summand, rows: Sequence[int]) -> List[int]:
    cols = s.shape[1]
    return [s.offset + r * cols + c for r in rows for c in range(cols)]


def _fill_chain_point(point: List, mats: Dict[int, Summand], symplectic: bool):
    """[I; 0] in every Mat_{a,a-1}; with symplectic set, odd a also gets a 1 at (a-1, a-2)."""
    for a, s in mats.items():
        cols = s.shape[1]
        for i in range(a - 1):
            point[s.offset + i * cols + i] = ONE
        if symplectic and a % 2 == 1:
            point[s.offset + (a - 1) * cols + (a - 2)] = ONE


def _sp_levels(
    R: Representation,
    n: int,
    top_slot: int,
    top_vector: List[int],
    top_vector_label: str,
) -> List[ChainLevel]:
    """Pair and square levels for sp_j x gl(2j-1), j = n, ..., 1."""
    mats = _mat_summands(R)
    levels = []
    for j in range(n, 0, -1):
        if j == n:
            vector, vector_label = top_vector, top_vector_label
        else:
            upper = mats[2 * j + 1]
            vector, vector_label = _rows(upper, [2 * j]), f"last row of Mat_{2 * j + 1},{2 * j}"
        pair = mats[2 * j]
        levels.append(ChainLevel(
            label=f"{vector_label} + Mat_{2 * j},{2 * j - 1}",
            coordinates=tuple(vector + _rows(pair, range(2 * j))),
            expected_kernel_dim=dim_sp(j - 1),
            pattern=BlockPattern.SP_PAIR,
            upper_factor=top_slot - 2 * j,
            upper_slot=2 * j,
            lower_factor=top_slot - (2 * j - 1),
            lower_slot=2 * j - 1,
        ))
        if j > 1:
            square = mats[2 * j - 1]
            levels.append(ChainLevel(
                label=f"top rows of Mat_{2 * j - 1},{2 * j - 2}",
                coordinates=tuple(_rows(square, range(2 * j - 2))),
                expected_kernel_dim=dim_sp(j - 1),
                pattern=BlockPattern.SQUARE,
                upper_factor=top_slot - (2 * j - 1),
                upper_slot=2 * j - 1,
                lower_factor=top_slot - (2 * j - 2),
                lower_slot=2 * j - 2,
            ))
    return levels


def _certify(F: FamilyInstance, candidate: Optional[Sequence], bound: int, seed: int, attempts: int):
    F.certified = certify_point(F.representation, candidate, bound, seed, attempts)
    if F.certified is None:
        F.notes.append(f"no point of full beta rank found in {attempts} random draws")
    elif F.certified.used_fallback:
        F.notes.append(
            f"canonical point not in general position; certified with random seed {F.certified.seeds_tried[-1]}"
        )


# Builders

def sp_chain(n: int, certify: bool = True, bound: int = 10, seed: int = 0, attempts: int = 10) -> FamilyInstance:
    """sp(n) x gl(2n-1) x ... x gl(1) on C^{2n} + E_{2n}."""
    if n < 1:
        raise InvalidAlgebraError(f"sp-chain needs n >= 1, got {n}")
    L = product([classical_algebra(FactorKind.SP, n)]
                + [classical_algebra(FactorKind.GL, k) for k in range(2 * n - 1, 0, -1)])
    chain = chain_rep(L)
    R = direct_sum_rep([factor_standard_rep(L, 0), chain])
    R = R.relabel(f"C^{2 * n} + E_{2 * n}", [f"C^{2 * n}"] + [s.label for s in chain.summands])

    point = [ZERO] * R.dim_v
    point[2 * n - 1] = ONE
    _fill_chain_point(point, _mat_summands(R), symplectic=True)
    levels = _sp_levels(R, n, 2 * n, list(range(2 * n)), f"C^{2 * n}")

    F = FamilyInstance(FamilyName.SP_CHAIN, n, L, R, tuple(point), levels, list(CITATIONS[FamilyName.SP_CHAIN]))
    logger.info("built sp-chain n=%d: dim g %d, dim V %d", n, L.dim, R.dim_v)
    if certify:
        _certify(F, F.canonical_point, bound, seed, attempts)
    return F


def so_chain(n: int, certify: bool = True, bound: int = 10, seed: int = 0, attempts: int = 10) -> FamilyInstance:
    """so(n) x gl(n-1) x ... x gl(1) on E_n."""
    if n < 2:
        raise InvalidAlgebraError(f"so-chain needs n >= 2, got {n}")
    L = product([classical_algebra(FactorKind.SO, n)]
                + [classical_algebra(FactorKind.GL, k) for k in range(n - 1, 0, -1)])
    R = chain_rep(L)

    point = [ZERO] * R.dim_v
    mats = _mat_summands(R)
    _fill_chain_point(point, mats, symplectic=False)
    levels = [
        ChainLevel(
            label=f"Mat_{k},{k - 1}",
            coordinates=tuple(range(mats[k].offset, mats[k].stop)),
            expected_kernel_dim=dim_so(k - 1),
            pattern=BlockPattern.SO_LEVEL,
            upper_factor=n - k,
            upper_slot=k,
            lower_factor=n - k + 1,
            lower_slot=k - 1,
        )
        for k in range(n, 1, -1)
    ]

    F = FamilyInstance(FamilyName.SO_CHAIN, n, L, R, tuple(point), levels, list(CITATIONS[FamilyName.SO_CHAIN]))
    logger.info("built so-chain n=%d: dim g %d, dim V %d", n, L.dim, R.dim_v)
    if certify:
        _certify(F, F.canonical_point, bound, seed, attempts)
    return F


def sp_E_only(n: int, certify: bool = True, bound: int = 10, seed: int = 0, attempts: int = 10) -> FamilyInstance:
    """sp(n) x gl(2n) x ... x gl(1) on E_{2n+1}, sp(n) acting on C^{2n+1} as diag(A, 0)."""
    if n < 1:
        raise InvalidAlgebraError(f"sp-e-only needs n >= 1, got {n}")
    L = product([classical_algebra(FactorKind.SP, n)]
                + [classical_algebra(FactorKind.GL, k) for k in range(2 * n, 0, -1)])
    top = 2 * n + 1
    R = chain_rep(L, [top] + list(range(2 * n, 0, -1)))

    point = [ZERO] * R.dim_v
    mats = _mat_summands(R)
    _fill_chain_point(point, mats, symplectic=True)
    head = mats[top]
    levels = [ChainLevel(
        label=f"top rows of Mat_{top},{2 * n}",
        coordinates=tuple(_rows(head, range(2 * n))),
        expected_kernel_dim=dim_sp(n),
        pattern=BlockPattern.SQUARE,
        upper_factor=0,
        upper_slot=top,
        lower_factor=1,
        lower_slot=2 * n,
    )]
    levels += _sp_levels(R, n, top, _rows(head, [2 * n]), f"last row of Mat_{top},{2 * n}")

    F = FamilyInstance(FamilyName.SP_E_ONLY, n, L, R, tuple(point), levels, list(CITATIONS[FamilyName.SP_E_ONLY]))
    logger.info("built sp-e-only n=%d: dim g %d, dim V %d", n, L.dim, R.dim_v)
    if certify:
        _certify(F, F.canonical_point, bound, seed, attempts)
    return F


def helmstetter(certify: bool = True, bound: int = 10, seed: int = 0, attempts: int = 10) -> FamilyInstance:
    """sp(2) x gl(3) x gl(2) x gl(1) x gl(1) on C^4 + Mat_{4,3} + Mat_{3,2} + sl(2).

    Action (alpha A x, A Y B^T, B Z C^T, [C, U] + beta U) at Lie level.
    """
    L = product([
        classical_algebra(FactorKind.SP, 2),
        classical_algebra(FactorKind.GL, 3),
        classical_algebra(FactorKind.GL, 2),
        classical_algebra(FactorKind.GL, 1),
        classical_algebra(FactorKind.GL, 1),
    ])
    R = direct_sum_rep([
        tensor_rep(factor_standard_rep(L, 0), factor_standard_rep(L, 3)),
        tensor_rep(factor_standard_rep(L, 0), factor_standard_rep(L, 1)),
        tensor_rep(factor_standard_rep(L, 1), factor_standard_rep(L, 2)),
        tensor_rep(adjoint_traceless_rep(L, 2), factor_standard_rep(L, 4)),
    ])
    R = R.relabel("C^4 + Mat_4,3 + Mat_3,2 + sl(2)", ["C^4", "Mat_4,3", "Mat_3,2", "sl(2)"])

    # no assembled point is known here; a seeded random draw is the canonical choice
    F = FamilyInstance(
        FamilyName.HELMSTETTER, 2, L, R, tuple([ZERO] * R.dim_v), [],
        list(CITATIONS[FamilyName.HELMSTETTER]),
    )
    logger.info("built helmstetter module: dim g %d, dim V %d", L.dim, R.dim_v)
    if certify:
        _certify(F, None, bound, seed, attempts)
        if F.certified is not None:
            F.canonical_point = F.certified.point
    return F


_BUILDERS: Dict[FamilyName, Callable[..., FamilyInstance]] = {
    FamilyName.SP_CHAIN: sp_chain,
    FamilyName.SO_CHAIN: so_chain,
    FamilyName.SP_E_ONLY: sp_E_only,
}


def build_family(name, n: Optional[int] = None, **kwargs) -> FamilyInstance:
    """Dispatch on a family name; n is ignored for helmstetter."""
    family = name if isinstance(name, FamilyName) else FamilyName.parse(name)
    if family is FamilyName.HELMSTETTER:
        return helmstetter(**kwargs)
    if n is None:
        raise InvalidAlgebraError(f"{family.value} needs a value for n")
    return _BUILDERS[family](n, **kwargs)


def family_dims(name, n: int = 2):
    """(dim g, dim V) from the closed formulas, without building anything."""
    family = name if isinstance(name, FamilyName) else FamilyName.parse(name)
    if family is FamilyName.SP_CHAIN:
        return dim_sp(n) + _squares(2 * n - 1), 2 * n + dim_chain(2 * n)
    if family is FamilyName.SO_CHAIN:
        return dim_so(n) + _squares(n - 1), dim_chain(n)
    if family is FamilyName.SP_E_ONLY:
        return dim_sp(n) + _squares(2 * n), dim_chain(2 * n + 1)
    return 25, 25


def dim_identities(n_max: int) -> DimsTable:
    if n_max < 1:
        raise InvalidAlgebraError("n_max must be at least 1")
    table = DimsTable(n_max)
    for m in range(2, max(2, n_max) + 1):
        table.rows.append(IdentityRow("chain", m, dim_chain(m), m * (m - 1) // 2 + _squares(m - 1)))
    for n in range(1, n_max + 1):
        g, v = family_dims(FamilyName.SP_CHAIN, n)
        table.rows.append(IdentityRow("sp-chain", n, g, v))
    for n in range(2, n_max + 1):
        g, v = family_dims(FamilyName.SO_CHAIN, n)
        table.rows.append(IdentityRow("so-chain", n, g, v))
    for n in range(1, n_max + 1):
        g, v = family_dims(FamilyName.SP_E_ONLY, n)
        table.rows.append(IdentityRow("sp-e-only", n, g, v))
    return table


# Stabilizer chains

def _component(L: LieAlgebra, X: Mat, factor_index: int, slot: int) -> Mat:
    block = L.factor_block(X, factor_index)
    return block if block.rows == slot else block.embed(slot, 0)


def _leading(M: Mat, size: int) -> Mat:
    return M.submatrix(range(size), range(size))


def _edges_zero(U: Mat, keep: int) -> bool:
    """Every entry outside the leading keep x keep block vanishes."""
    return all(
        not U[r, c] for r in range(U.rows) for c in range(U.cols) if r >= keep or c >= keep
    )


def _pattern_holds(level: ChainLevel, U: Mat, Lw: Mat) -> bool:
    s_u, s_l = level.upper_slot, level.lower_slot
    if level.pattern is BlockPattern.SP_PAIR:
        return _edges_zero(U, s_u - 2) and Lw == -_leading(U, s_l).transpose()
    if level.pattern is BlockPattern.SQUARE:
        return _edges_zero(U, s_u - 1) and Lw == -_leading(U, s_l).transpose()
    if level.pattern is BlockPattern.SO_LEVEL:
        return (
            U == -U.transpose()
            and _edges_zero(U, s_u - 1)
            and Lw == -_leading(U, s_l).transpose()
        )
    return True


def _check_pattern(level: ChainLevel, L: LieAlgebra, basis: Sequence[Vector]) -> bool:
    if level.pattern is BlockPattern.NONE:
        return True
    for v in basis:
        X = L.element(v)
        U = _component(L, X, level.upper_factor, level.upper_slot)
        Lw = _component(L, X, level.lower_factor, level.lower_slot)
        if not _pattern_holds(level, U, Lw):
            return False
    return True


def stabilizer_chain_report(F: FamilyInstance, strict: bool = False) -> ChainReport:
    """Fix the canonical point level by level and compare each stabilizer with the expected one.

    With strict set the first failing level raises StabilizerChainError.
    """
    if not F.expected_stabilizer_chain:
        raise InvalidAlgebraError(f"{F.family.value} has no stabilizer chain")
    report = ChainReport(F.family.value, F.n, citations=list(F.citations))
    current = F.representation
    remaining = list(range(current.dim_v))
    all_prehomogeneous = True

    for level in F.expected_stabilizer_chain:
        position = {c: i for i, c in enumerate(remaining)}
        values = [F.canonical_point[c] for c in level.coordinates]
        try:
            local = [position[c] for c in level.coordinates]
            step = restrict_on_coordinates(current, local, values)
        except (KeyError, EtaleError) as exc:
            message = f"block no longer splits off: {exc}"
            report.levels.append(LevelResult(level.label, len(level.coordinates), 0,
                                             level.expected_kernel_dim, -1, -1, False, message))
            logger.warning("chain level %s: %s", level.label, message)
            if strict:
                raise StabilizerChainError(level.label, level.expected_kernel_dim, None, message) from exc
            all_prehomogeneous = False
            break

        pattern_ok = _check_pattern(level, current.algebra, step.stabilizer_basis)
        result = LevelResult(
            label=level.label,
            fixed_dim=step.fixed_dim,
            rank=step.rank,
            expected_kernel_dim=level.expected_kernel_dim,
            kernel_dim=step.effective_kernel_dim,
            stabilizer_dim=step.kernel_dim,
            pattern_ok=pattern_ok,
        )
        if not result.prehomogeneous:
            result.message = f"rank {step.rank} < {step.fixed_dim}"
        elif not pattern_ok:
            result.message = f"stabilizer does not have the {level.pattern.value} block pattern"
        elif result.kernel_dim != level.expected_kernel_dim:
            result.message = f"kernel dimension {result.kernel_dim}, expected {level.expected_kernel_dim}"
        report.levels.append(result)
        logger.info("chain level %s: rank %d/%d, kernel %d (expected %d)",
                    level.label, step.rank, step.fixed_dim, result.kernel_dim, level.expected_kernel_dim)
        if not result.passed and strict:
            raise StabilizerChainError(level.label, level.expected_kernel_dim, result.kernel_dim, result.message)

        all_prehomogeneous = all_prehomogeneous and result.prehomogeneous
        current = step.representation
        remaining = [remaining[c] for c in step.remaining]

    report.final_algebra_dim = current.dim_g
    report.remaining_dim = current.dim_v
    if not all_prehomogeneous or report.remaining_dim:
        report.reduction_verdict = Verdict.NOT_PREHOMOGENEOUS
    elif report.final_algebra_dim:
        report.reduction_verdict = Verdict.PREHOMOGENEOUS_NOT_ETALE
    else:
        report.reduction_verdict = Verdict.ETALE
    report.direct_verdict = is_etale_at(F.representation, F.canonical_point, F.description).verdict
    if not report.agree:
        logger.warning("%s: chain verdict %s but direct verdict %s", F.description,
                       report.reduction_verdict.value, report.direct_verdict.value)
    return report


def verify_by_reduction(F: FamilyInstance) -> Verdict:
    """Verdict from restricting summand by summand at the family's point."""
    return reduction_verdict(F.representation, F.point)
