"""
Data models for the etale-modules toolkit
Plain records shared by the algebra layer, the services and the surfaces.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from src.models.errors import InvalidAlgebraError


class FactorKind(Enum):
    """Kinds of factors a matrix Lie algebra can be built from."""
    GL = "gl"
    SL = "sl"
    SO = "so"
    SP = "sp"
    PRODUCT_COMPONENT = "product-component"


class Verdict(Enum):
    """Outcome of a beta-map check at a single point."""
    ETALE = "etale"
    PREHOMOGENEOUS_NOT_ETALE = "prehomogeneous-not-etale"
    NOT_PREHOMOGENEOUS = "not-prehomogeneous-at-point"


class FamilyName(Enum):
    """The constructed families of etale modules."""
    SP_CHAIN = "sp-chain"
    SO_CHAIN = "so-chain"
    SP_E_ONLY = "sp-e-only"
    HELMSTETTER = "helmstetter"

    @classmethod
    def parse(cls, value: str) -> "FamilyName":
        aliases = {"sp-chain-e-only": cls.SP_E_ONLY}
        key = value.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise InvalidAlgebraError(f"unknown family {value!r}; expected one of {names}") from None


class CastlingSide(Enum):
    """Whether a tensor shape uses its core module or the dual of it."""
    PLAIN = "plain"
    DUAL_CORE = "dual-core"

    def flipped(self) -> "CastlingSide":
        return CastlingSide.DUAL_CORE if self is CastlingSide.PLAIN else CastlingSide.PLAIN


class BlockPattern(Enum):
    """Shape a chain-level stabilizer is expected to have."""
    NONE = "none"
    SP_PAIR = "sp-pair"
    SQUARE = "square"
    SO_LEVEL = "so-level"


@dataclass(frozen=True)
class Factor:
    """One factor of a (product) matrix Lie algebra.

    basis_start/basis_stop are None for subalgebras, whose basis no longer
    splits along factors; the ambient block is always meaningful.
    """
    kind: FactorKind
    size: int
    basis_start: Optional[int]
    basis_stop: Optional[int]
    ambient_start: int
    ambient_stop: int

    @property
    def ambient_size(self) -> int:
        return self.ambient_stop - self.ambient_start

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.size})"


@dataclass(frozen=True)
class Summand:
    """A block of the direct-sum decomposition of a module."""
    label: str
    dimension: int
    offset: int
    shape: Optional[Tuple[int, int]] = None  # (rows, cols) for matrix summands

    @property
    def stop(self) -> int:
        return self.offset + self.dimension


@dataclass
class VerificationReport:
    """Outcome of an etale / prehomogeneity check at one point."""
    description: str
    dim_g: int
    dim_v: int
    point: Tuple[Fraction, ...]
    rank_beta: int
    det_nonzero: Optional[bool]
    verdict: Verdict
    stabilizer_dim: int
    stabilizer_basis: List[Tuple[Fraction, ...]] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.stabilizer_dim != self.dim_g - self.rank_beta:
            raise ValueError("stabilizer_dim must equal dim_g - rank_beta")
        if self.verdict is Verdict.ETALE and not (self.dim_g == self.dim_v and self.det_nonzero):
            raise ValueError("an etale verdict needs dim_g == dim_v and a non-zero determinant")

    @property
    def is_etale(self) -> bool:
        return self.verdict is Verdict.ETALE


@dataclass(frozen=True)
class ChainLevel:
    """One step of a stabilizer chain: the block that gets fixed and what to expect.

    coordinates index the module the chain starts from; upper/lower name the
    factor indices (and slot sizes) whose components the block pattern relates.
    """
    label: str
    coordinates: Tuple[int, ...]
    expected_kernel_dim: int
    pattern: BlockPattern = BlockPattern.NONE
    upper_factor: Optional[int] = None
    upper_slot: Optional[int] = None
    lower_factor: Optional[int] = None
    lower_slot: Optional[int] = None


@dataclass
class LevelResult:
    """Measured outcome of one chain level."""
    label: str
    fixed_dim: int
    rank: int
    expected_kernel_dim: int
    kernel_dim: int
    stabilizer_dim: int
    pattern_ok: bool
    message: str = ""

    @property
    def prehomogeneous(self) -> bool:
        return self.rank == self.fixed_dim

    @property
    def passed(self) -> bool:
        return self.prehomogeneous and self.pattern_ok and self.kernel_dim == self.expected_kernel_dim


@dataclass
class ChainReport:
    """Level-by-level walk down a family's stabilizer chain."""
    family: str
    n: int
    levels: List[LevelResult] = field(default_factory=list)
    final_algebra_dim: int = 0
    remaining_dim: int = 0
    reduction_verdict: Verdict = Verdict.NOT_PREHOMOGENEOUS
    direct_verdict: Verdict = Verdict.NOT_PREHOMOGENEOUS
    citations: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.reduction_verdict is self.direct_verdict

    @property
    def passed(self) -> bool:
        return (
            all(level.passed for level in self.levels)
            and self.final_algebra_dim == 0
            and self.remaining_dim == 0
            and self.agree
        )


@dataclass(frozen=True)
class IdentityRow:
    """Both sides of one dimension identity."""
    identity: str
    parameter: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class DimsTable:
    """Dimension identities for chain modules and the families."""
    n_max: int
    rows: List[IdentityRow] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(row.holds for row in self.rows)
