"""
Pydantic schemas for request/response validation
JSON wire formats for series, results, strata and verification reports
"""

from pydantic import BaseModel, Field, ConfigDict, field_serializer, model_validator
from typing import Optional, List, Literal


# ==========================================
# SERIES SCHEMAS
# ==========================================

class SeriesPayload(BaseModel):
    """Truncated series on the wire: coefficients as decimal strings"""
    order: int = Field(..., ge=0, description="Truncation order N")
    coeffs: List[int] = Field(..., description="Coefficients of t^0..t^N")

    @field_serializer("coeffs")
    def _coeffs_as_strings(self, coeffs: List[int]) -> List[str]:
        # Coefficients outgrow native integer widths
        return [str(c) for c in coeffs]

    @model_validator(mode="after")
    def _length_matches_order(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        return self


# ==========================================
# COMPUTE SCHEMAS
# ==========================================

class ComputeRequest(BaseModel):
    """Validated input of the `compute` subcommand"""
    rank: int = Field(..., ge=1)
    degree: int
    genus: int = Field(..., ge=0)
    circles: int = Field(..., ge=0, description="Number of real circles a")
    w: Optional[List[int]] = Field(None, description="Stiefel-Whitney numbers, one per circle")
    quaternionic: bool = False
    allow_a0: bool = False
    order: Optional[int] = Field(None, ge=0, description="Truncation order override (upward only)")
    format: Literal["text", "json", "csv"] = "text"
    use_cache: bool = True
    raw_degree: bool = False

    @model_validator(mode="after")
    def _check_w(self):
        if self.w is None:
            return self
        if self.quaternionic:
            raise ValueError("w is only meaningful for real bundles")
        if len(self.w) != self.circles:
            raise ValueError(f"w has {len(self.w)} entries but the curve has {self.circles} real circles")
        if any(x not in (0, 1) for x in self.w):
            raise ValueError("w entries must be 0 or 1")
        if sum(self.w) % 2 != self.degree % 2:
            raise ValueError(f"sum(w) = {sum(self.w)} does not match degree {self.degree} mod 2")
        return self


class ResultParams(BaseModel):
    """Parameters echoed in a result"""
    rank: int
    degree: int
    genus: int
    circles: int
    w: Optional[List[int]] = None
    quaternionic: bool = False
    real_degree: int = Field(..., description="Degree of the real moduli problem actually computed")


class BettiResultPayload(BaseModel):
    """JSON rendering of a BettiResult; field order is part of the contract"""
    params: ResultParams
    degree: int
    coeffs: List[int]
    palindromic: bool
    strata: int
    order: int

    @field_serializer("coeffs")
    def _coeffs_as_strings(self, coeffs: List[int]) -> List[str]:
        return [str(c) for c in coeffs]


# ==========================================
# STRATA SCHEMAS
# ==========================================

class StrataRecord(BaseModel):
    """One unstable Harder-Narasimhan type per line of `strata list`"""
    parts: List[List[int]] = Field(..., description="[[r_1, d_1], ..., [r_n, d_n]]")
    codim: int
    refinements: Optional[int] = Field(None, description="Number of real refinements")


# ==========================================
# VERIFICATION SCHEMAS
# ==========================================

class IdentityReport(BaseModel):
    """Outcome of comparing both sides of a generating-function identity"""
    identity: str
    order: int
    equal: bool
    mismatch_index: Optional[int] = None
    lhs_coefficient: Optional[int] = None
    rhs_coefficient: Optional[int] = None

    model_config = ConfigDict(frozen=True)

    @field_serializer("lhs_coefficient", "rhs_coefficient")
    def _coeff_as_string(self, value: Optional[int]) -> Optional[str]:
        return None if value is None else str(value)


class CheckOutcome(BaseModel):
    """Single line of a verification summary"""
    name: str
    passed: bool
    detail: str = ""


class VerificationSummary(BaseModel):
    """Result of `verify`"""
    order: int
    passed: int
    failed: int
    checks: List[CheckOutcome]


class GoldenRow(BaseModel):
    """Published polynomial, lowest power first"""
    rank: int
    degree: int
    genus: int
    circles: int
    coeffs: List[int]


class TableRow(BaseModel):
    """Recomputed row of a golden table"""
    golden: GoldenRow
    computed: List[int]
    matches: bool


# ==========================================
# CACHE SCHEMAS
# ==========================================

class CacheStats(BaseModel):
    """Result of `cache stats`"""
    directory: str
    files: int
    bytes: int
