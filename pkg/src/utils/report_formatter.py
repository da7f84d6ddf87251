"""
Report formatter for the etale-modules toolkit
Turns verification results into pydantic schemas and JSON text.
"""

import json
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from pydantic import BaseModel

from src.algebra.castling import PreservationCheck, TensorShape, is_casual, is_reduced
from src.algebra.exactmat import format_scalar
from src.models.entities import ChainReport, DimsTable, VerificationReport
from src.models.schemas import (
    CastlingReportSchema, ChainReportSchema, DimsTableSchema, IdentityRowSchema,
    LevelResultSchema, PreservationDrawSchema, ShapeSchema, StabilizerReportSchema,
    VerificationReportSchema,
)


class ReportFormatter:
    """Utility class for formatting verification results."""

    def __init__(self, indent: Optional[int] = 2):
        self.indent = indent

    @staticmethod
    def rational(value: Fraction) -> str:
        return format_scalar(Fraction(value))

    def vector(self, values: Sequence[Fraction]) -> List[str]:
        return [self.rational(v) for v in values]

    def format_verification(self, report: VerificationReport) -> VerificationReportSchema:
        return VerificationReportSchema(
            description=report.description,
            dim_g=report.dim_g,
            dim_v=report.dim_v,
            point=self.vector(report.point),
            rank_beta=report.rank_beta,
            det_nonzero=report.det_nonzero,
            verdict=report.verdict,
            stabilizer_dim=report.stabilizer_dim,
            stabilizer_basis=[self.vector(v) for v in report.stabilizer_basis],
            citations=list(report.citations),
            notes=list(report.notes),
        )

    def format_chain(self, chain: ChainReport) -> ChainReportSchema:
        levels = [
            LevelResultSchema(
                label=level.label,
                fixed_dim=level.fixed_dim,
                rank=level.rank,
                expected_kernel_dim=level.expected_kernel_dim,
                kernel_dim=level.kernel_dim,
                stabilizer_dim=level.stabilizer_dim,
                pattern_ok=level.pattern_ok,
                passed=level.passed,
                message=level.message,
            )
            for level in chain.levels
        ]
        return ChainReportSchema(
            family=chain.family,
            n=chain.n,
            levels=levels,
            final_algebra_dim=chain.final_algebra_dim,
            remaining_dim=chain.remaining_dim,
            reduction_verdict=chain.reduction_verdict,
            direct_verdict=chain.direct_verdict,
            agree=chain.agree,
            passed=chain.passed,
            citations=list(chain.citations),
        )

    def format_shape(self, shape: TensorShape) -> ShapeSchema:
        return ShapeSchema(
            description=shape.describe(),
            core_dim=shape.core_dim,
            gl_size=shape.gl_size,
            side=shape.side.value,
            module_dim=shape.module_dim,
            algebra_dim=shape.algebra_dim,
            reduced=is_reduced(shape),
            casual=is_casual(shape),
        )

    def format_castling(
        self,
        check: PreservationCheck,
        round_trip: Optional[TensorShape] = None,
        notes: Sequence[str] = (),
    ) -> CastlingReportSchema:
        return CastlingReportSchema(
            source=self.format_shape(check.source),
            target=self.format_shape(check.target),
            round_trip=self.format_shape(round_trip) if round_trip is not None else None,
            involution_holds=(round_trip == check.source) if round_trip is not None else None,
            draws=[
                PreservationDrawSchema(
                    seed=d.seed,
                    rank_before=d.rank_before,
                    rank_after=d.rank_after,
                    stabilizer_before=d.stabilizer_before,
                    stabilizer_after=d.stabilizer_after,
                    generic=d.generic,
                )
                for d in check.draws
            ],
            generic_draws=check.generic_draws,
            stabilizers_agree=check.stabilizers_agree,
            preserved=check.preserved,
            notes=list(notes),
        )

    def format_stabilizer(
        self,
        report: VerificationReport,
        line_basis: Optional[Sequence[Sequence[Fraction]]] = None,
    ) -> StabilizerReportSchema:
        return StabilizerReportSchema(
            description=report.description,
            dim_g=report.dim_g,
            dim_v=report.dim_v,
            point=self.vector(report.point),
            rank_beta=report.rank_beta,
            stabilizer_dim=report.stabilizer_dim,
            stabilizer_basis=[self.vector(v) for v in report.stabilizer_basis],
            line_stabilizer_dim=None if line_basis is None else len(line_basis),
            line_stabilizer_basis=None if line_basis is None else [self.vector(v) for v in line_basis],
        )

    def format_dims(self, table: DimsTable) -> DimsTableSchema:
        return DimsTableSchema(
            n_max=table.n_max,
            rows=[
                IdentityRowSchema(identity=r.identity, parameter=r.parameter, lhs=r.lhs, rhs=r.rhs, holds=r.holds)
                for r in table.rows
            ],
            all_hold=table.all_hold,
        )

    def to_json(self, payload: Any) -> str:
        """JSON text of a schema or a list of schemas."""
        if isinstance(payload, BaseModel):
            return payload.model_dump_json(indent=self.indent)
        if isinstance(payload, list):
            return json.dumps([self._plain(p) for p in payload], indent=self.indent)
        return json.dumps(payload, indent=self.indent)

    @staticmethod
    def _plain(item: Any) -> Any:
        return item.model_dump(mode="json") if isinstance(item, BaseModel) else item

    def summary_line(self, report: VerificationReport) -> str:
        """One line for the diagnostic stream."""
        return (
            f"{report.description}: dim g {report.dim_g}, dim V {report.dim_v}, "
            f"rank {report.rank_beta}, {report.verdict.value}"
        )
