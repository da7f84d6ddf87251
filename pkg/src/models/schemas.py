"""
Report schemas for the etale-modules toolkit
Pydantic models for the JSON emitted by the CLI and the HTTP API.
Rationals travel as "p/q" strings, dimensions and ranks as integers.
"""

import re
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.entities import Verdict

_RATIONAL_PATTERN = r"^-?\d+(/\d+)?$"


def _check_rational(value: str) -> str:
    if not re.match(_RATIONAL_PATTERN, value):
        raise ValueError(f"{value!r} is not an exact rational")
    return value


class VerificationReportSchema(BaseModel):
    """Outcome of an etale check at one point."""
    model_config = ConfigDict(use_enum_values=True)

    description: str
    dim_g: int = Field(ge=0)
    dim_v: int = Field(ge=0)
    point: List[str]
    rank_beta: int = Field(ge=0)
    det_nonzero: Optional[bool]
    verdict: Verdict
    stabilizer_dim: int = Field(ge=0)
    stabilizer_basis: List[List[str]]
    citations: List[str]
    notes: List[str] = Field(default_factory=list)

    @field_validator("point")
    @classmethod
    def _point_is_exact(cls, value: List[str]) -> List[str]:
        return [_check_rational(v) for v in value]

    @field_validator("stabilizer_basis")
    @classmethod
    def _basis_is_exact(cls, value: List[List[str]]) -> List[List[str]]:
        return [[_check_rational(v) for v in row] for row in value]


class LevelResultSchema(BaseModel):
    label: str
    fixed_dim: int
    rank: int
    expected_kernel_dim: int
    kernel_dim: int
    stabilizer_dim: int
    pattern_ok: bool
    passed: bool
    message: str = ""


class ChainReportSchema(BaseModel):
    model_config = ConfigDict(use_enum_values=True)

    family: str
    n: int
    levels: List[LevelResultSchema]
    final_algebra_dim: int
    remaining_dim: int
    reduction_verdict: Verdict
    direct_verdict: Verdict
    agree: bool
    passed: bool
    citations: List[str] = Field(default_factory=list)


class FamilyReportSchema(BaseModel):
    """Family verification: the point report plus the optional chain walk."""
    family: str
    n: int
    spec: str
    used_fallback: bool
    report: VerificationReportSchema
    chain_report: Optional[ChainReportSchema] = None


class ShapeSchema(BaseModel):
    description: str
    core_dim: int
    gl_size: int
    side: str
    module_dim: int
    algebra_dim: int
    reduced: bool
    casual: bool


class PreservationDrawSchema(BaseModel):
    seed: int
    rank_before: int
    rank_after: int
    stabilizer_before: int
    stabilizer_after: int
    generic: bool


class CastlingReportSchema(BaseModel):
    source: ShapeSchema
    target: ShapeSchema
    round_trip: Optional[ShapeSchema] = None
    involution_holds: Optional[bool] = None
    draws: List[PreservationDrawSchema]
    generic_draws: int
    stabilizers_agree: bool
    preserved: bool
    notes: List[str] = Field(default_factory=list)


class StabilizerReportSchema(BaseModel):
    description: str
    dim_g: int
    dim_v: int
    point: List[str]
    rank_beta: int
    stabilizer_dim: int
    stabilizer_basis: List[List[str]]
    line_stabilizer_dim: Optional[int] = None
    line_stabilizer_basis: Optional[List[List[str]]] = None


class IdentityRowSchema(BaseModel):
    identity: str
    parameter: int
    lhs: int
    rhs: int
    holds: bool


class DimsTableSchema(BaseModel):
    n_max: int
    rows: List[IdentityRowSchema]
    all_hold: bool


# Request bodies for the HTTP API

class VerifyRequest(BaseModel):
    spec: str
    point: str = "canonical"
    seed: Optional[int] = Field(default=None, ge=0)
    bound: Optional[int] = Field(default=None, ge=1)


class CastleRequest(BaseModel):
    spec: str
    twice: bool = False
    seed: Optional[int] = Field(default=None, ge=0)
    bound: Optional[int] = Field(default=None, ge=1)
    draws: int = Field(default=5, ge=1)


class StabilizerRequest(BaseModel):
    spec: str
    point: str = "canonical"
    seed: Optional[int] = Field(default=None, ge=0)
    bound: Optional[int] = Field(default=None, ge=1)
    line: bool = False
