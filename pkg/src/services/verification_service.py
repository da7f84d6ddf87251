"""
Verification service for the etale-modules toolkit
Orchestrates parsing, family construction, point selection and report
assembly for the CLI and the HTTP API.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from config.settings import AppConfig, config as default_config
from src.algebra.castling import castling_transform, check_preservation
from src.algebra.exactmat import Vector, to_vector
from src.algebra.families import (
    FamilyInstance, build_family, dim_identities, stabilizer_chain_report,
)
from src.algebra.rep import (
    CertifiedPoint, Representation, certify_point, identity_block_point, is_etale_at,
    line_stabilizer_algebra, random_point,
)
from src.models.entities import FamilyName, VerificationReport
from src.models.errors import DimensionMismatchError
from src.models.schemas import (
    CastlingReportSchema, DimsTableSchema, FamilyReportSchema, StabilizerReportSchema,
    VerificationReportSchema,
)
from src.utils.report_formatter import ReportFormatter
from src.utils.spec_parser import build_module, family_spec_text, match_family, parse_module_spec, shape_from_spec

logger = logging.getLogger(__name__)

POINT_MODES = ("canonical", "random")


@dataclass
class SelectedPoint:
    point: Vector
    mode: str
    notes: List[str] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)
    family: Optional[FamilyInstance] = None


class VerificationService:
    """Service for verifying modules, families and castling transforms."""

    def __init__(self, app_config: Optional[AppConfig] = None, formatter: Optional[ReportFormatter] = None):
        self.config = app_config or default_config
        self.formatter = formatter or ReportFormatter()

    # Settings

    def _seed(self, seed: Optional[int]) -> int:
        return self.config.verifier.seed if seed is None else seed

    def _bound(self, bound: Optional[int]) -> int:
        return self.config.verifier.random_bound if bound is None else bound

    # Points

    def _select_point(
        self,
        spec_text: str,
        R: Representation,
        mode: str,
        seed: int,
        bound: int,
    ) -> SelectedPoint:
        mode = (mode or "canonical").strip()
        if mode == "random":
            return SelectedPoint(random_point(R, bound, seed), f"random point (seed {seed}, bound {bound})")
        if mode != "canonical":
            try:
                values = to_vector(part for part in mode.split(",") if part.strip())
            except (ValueError, ZeroDivisionError, TypeError) as e:
                raise DimensionMismatchError(f"cannot read point {mode!r}: {e}") from e
            if len(values) != R.dim_v:
                raise DimensionMismatchError(f"point of length {len(values)} for a {R.dim_v}-dimensional module")
            return SelectedPoint(values, "explicit point")

        matched = match_family(parse_module_spec(spec_text))
        if matched is not None:
            family, n = matched
            F = self._build_family(family, n, seed, bound)
            if F.representation == R:
                label = "certified random point" if family is FamilyName.HELMSTETTER else "family canonical point"
                return SelectedPoint(F.point, f"{label} of {family.value} n={n}", [], list(F.citations), F)
        return SelectedPoint(identity_block_point(R), "identity-block point")

    def _build_family(self, family: FamilyName, n: Optional[int], seed: int, bound: int) -> FamilyInstance:
        # chain families are certified lazily by the caller
        return build_family(
            family, n,
            certify=family is FamilyName.HELMSTETTER,
            bound=bound,
            seed=seed,
            attempts=self.config.verifier.fallback_attempts,
        )

    # Operations

    def verify_spec(
        self,
        spec_text: str,
        point: str = "canonical",
        seed: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> VerificationReportSchema:
        """Beta-map verdict for a module description at the chosen point."""
        seed, bound = self._seed(seed), self._bound(bound)
        spec = parse_module_spec(spec_text)
        _, R = build_module(spec)
        selected = self._select_point(spec_text, R, point, seed, bound)
        description = f"{R.label} at the {selected.mode}"
        if selected.family is not None:
            report = self._verify_family(selected.family, seed, bound, description)
        else:
            report = is_etale_at(R, selected.point, description, selected.citations)
            report.notes.extend(selected.notes)
        logger.info(self.formatter.summary_line(report))
        return self.formatter.format_verification(report)

    def _verify_family(
        self, F: FamilyInstance, seed: int, bound: int, description: Optional[str] = None
    ) -> VerificationReport:
        """Verdict at the family point, drawing certified random points when it is not generic."""
        description = description or F.description
        report = is_etale_at(F.representation, F.point, description, F.citations)
        if report.rank_beta < report.dim_v and F.certified is None:
            logger.warning(f"{F.description}: canonical point has rank {report.rank_beta}, trying random points")
            found = certify_point(F.representation, None, bound, seed, self.config.verifier.fallback_attempts)
            if found is not None:
                F.certified = CertifiedPoint(found.point, found.rank, True, found.attempts, found.seeds_tried)
                F.notes.append(f"canonical point not in general position; certified with random seed {found.seeds_tried[-1]}")
                report = is_etale_at(F.representation, F.point, description, F.citations)
            else:
                F.notes.append("no point of full beta rank found")
        report.notes.extend(F.notes)
        return report

    def family(
        self,
        name: str,
        n: Optional[int] = None,
        chain_report: bool = False,
        seed: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> FamilyReportSchema:
        """Build a family member, verify it and optionally walk its stabilizer chain."""
        seed, bound = self._seed(seed), self._bound(bound)
        family = FamilyName.parse(name)
        try:
            F = self._build_family(family, n, seed, bound)
            report = self._verify_family(F, seed, bound)
            chain = None
            if chain_report:
                if F.expected_stabilizer_chain:
                    chain = self.formatter.format_chain(stabilizer_chain_report(F))
                else:
                    report.notes.append(f"{family.value} has no stabilizer chain to report")
        except Exception as e:
            logger.error(f"Error verifying family {family.value} n={n}: {e}")
            raise
        logger.info(self.formatter.summary_line(report))
        return FamilyReportSchema(
            family=family.value,
            n=F.n,
            spec=family_spec_text(family, F.n),
            used_fallback=F.used_fallback,
            report=self.formatter.format_verification(report),
            chain_report=chain,
        )

    def sweep(
        self,
        name: str,
        ns: Sequence[int],
        chain_report: bool = False,
        seed: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> List[FamilyReportSchema]:
        """Verify several members in worker processes; results keep the order of ns."""
        FamilyName.parse(name)
        workers = max(1, min(self.config.verifier.max_workers, len(ns)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_family_in_worker, self.config, name, n, chain_report, seed, bound) for n in ns
            ]
            return [f.result() for f in futures]

    def castle(
        self,
        spec_text: str,
        twice: bool = False,
        seed: Optional[int] = None,
        bound: Optional[int] = None,
        draws: int = 5,
    ) -> CastlingReportSchema:
        """Castle a tensor shape and compare both sides at seeded random points."""
        seed, bound = self._seed(seed), self._bound(bound)
        shape = shape_from_spec(spec_text)
        target = castling_transform(shape)
        check = check_preservation(shape, range(seed, seed + draws), bound, target)
        round_trip = castling_transform(target) if twice else None
        notes = ["equivalence of modules is compared through shapes and dimensions"]
        return self.formatter.format_castling(check, round_trip, notes)

    def stabilizer(
        self,
        spec_text: str,
        point: str = "canonical",
        seed: Optional[int] = None,
        bound: Optional[int] = None,
        line: bool = False,
    ) -> StabilizerReportSchema:
        """Kernel of the beta map (and optionally the line stabilizer) at a point."""
        seed, bound = self._seed(seed), self._bound(bound)
        _, R = build_module(parse_module_spec(spec_text))
        selected = self._select_point(spec_text, R, point, seed, bound)
        description = f"{R.label} at the {selected.mode}"
        if selected.family is not None:
            report = self._verify_family(selected.family, seed, bound, description)
            x = selected.family.point
        else:
            report = is_etale_at(R, selected.point, description)
            x = selected.point
        line_basis = line_stabilizer_algebra(R, x) if line else None
        return self.formatter.format_stabilizer(report, line_basis)

    def dims(self, n_max: int) -> DimsTableSchema:
        return self.formatter.format_dims(dim_identities(n_max))


def parse_sweep(text: str) -> Tuple[int, ...]:
    """"2,3,4" -> (2, 3, 4)."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise DimensionMismatchError(f"cannot read the sweep list {text!r}") from e


def _family_in_worker(
    app_config: AppConfig,
    name: str,
    n: int,
    chain_report: bool,
    seed: Optional[int],
    bound: Optional[int],
) -> FamilyReportSchema:
    return VerificationService(app_config).family(name, n, chain_report, seed, bound)
