"""
Castling transforms for the etale-modules toolkit
Shapes (G' x gl(n), V' (x) C^n), the transform n -> dim V' - n with the core
dualized, reducedness and casual-shape tests, and a seeded check that
prehomogeneity and generic stabilizer dimensions survive the transform.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from src.algebra.exactmat import eliminate
from src.algebra.liealg import classical_algebra, product
from src.algebra.rep import (
    Representation, beta_matrix, dual_rep, factor_standard_rep, lift_rep, random_point, tensor_rep,
)
from src.models.entities import CastlingSide, FactorKind
from src.models.errors import CastlingError, InvalidAlgebraError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TensorShape:
    """A core module V' of G' tensored with the standard module of gl(gl_size)."""
    core: Representation
    gl_size: int
    side: CastlingSide = CastlingSide.PLAIN

    def __post_init__(self):
        if self.gl_size < 1:
            raise InvalidAlgebraError("the gl factor of a tensor shape needs size at least 1")

    @property
    def core_dim(self) -> int:
        return self.core.dim_v

    @property
    def module_dim(self) -> int:
        return self.core_dim * self.gl_size

    @property
    def algebra_dim(self) -> int:
        return self.core.dim_g + self.gl_size ** 2

    def effective_core(self) -> Representation:
        return self.core if self.side is CastlingSide.PLAIN else dual_rep(self.core)

    def describe(self) -> str:
        core_label = self.effective_core().label
        return f"{self.core.algebra.label} x gl({self.gl_size}) : ({core_label}) * C^{self.gl_size}"

    def to_representation(self) -> Representation:
        """The module over G' x gl(n), with gl(n) as the last factor."""
        gl = classical_algebra(FactorKind.GL, self.gl_size)
        L = product([self.core.algebra, gl])
        lifted = lift_rep(self.effective_core(), L, 0)
        R = tensor_rep(lifted, factor_standard_rep(L, len(L.factors) - 1))
        return R.relabel(self.describe())


def castling_transform(T: TensorShape) -> TensorShape:
    """(G' x gl(n), V' (x) C^n) -> (G' x gl(m - n), V'* (x) C^(m-n)) with m = dim V'."""
    m, n = T.core_dim, T.gl_size
    if m <= n:
        raise CastlingError(f"castling needs dim V' > n, got dim V' = {m} and n = {n}")
    return TensorShape(T.core, m - n, T.side.flipped())


def is_reduced(T: TensorShape) -> bool:
    """True when the transform would not shrink the module: n <= m - n."""
    return T.gl_size <= T.core_dim - T.gl_size


def is_casual(T: TensorShape) -> bool:
    return T.gl_size >= T.core_dim


def castling_orbit(T: TensorShape, steps: int = 2) -> List[TensorShape]:
    """T followed by up to `steps` successive transforms; stops where the transform is undefined."""
    orbit = [T]
    current = T
    for _ in range(steps):
        if current.core_dim <= current.gl_size:
            break
        current = castling_transform(current)
        orbit.append(current)
    return orbit


@dataclass
class PreservationDraw:
    """Ranks of the beta map on both sides at one seeded random point."""
    seed: int
    rank_before: int
    rank_after: int
    stabilizer_before: int
    stabilizer_after: int
    generic: bool


@dataclass
class PreservationCheck:
    source: TensorShape
    target: TensorShape
    draws: List[PreservationDraw] = field(default_factory=list)

    @property
    def generic_draws(self) -> int:
        return sum(1 for d in self.draws if d.generic)

    @property
    def stabilizers_agree(self) -> bool:
        return all(d.stabilizer_before == d.stabilizer_after for d in self.draws if d.generic)

    @property
    def preserved(self) -> bool:
        return self.generic_draws > 0 and self.stabilizers_agree


def check_preservation(
    T: TensorShape,
    seeds: Sequence[int],
    bound: int = 10,
    target: Optional[TensorShape] = None,
) -> PreservationCheck:
    """Compare beta ranks and stabilizer dimensions before and after castling.

    A draw is generic when both sides have full rank at their random points.
    """
    target = target or castling_transform(T)
    before = T.to_representation()
    after = target.to_representation()
    check = PreservationCheck(T, target)
    for seed in seeds:
        r1 = eliminate(beta_matrix(before, random_point(before, bound, seed))).rank
        r2 = eliminate(beta_matrix(after, random_point(after, bound, seed))).rank
        generic = r1 == before.dim_v and r2 == after.dim_v
        check.draws.append(PreservationDraw(
            seed, r1, r2, before.dim_g - r1, after.dim_g - r2, generic,
        ))
        if not generic:
            logger.info("seed %d is not generic for %s (ranks %d, %d)", seed, T.describe(), r1, r2)
    logger.info("castling %s -> %s: %d of %d draws generic",
                T.describe(), target.describe(), check.generic_draws, len(check.draws))
    return check
