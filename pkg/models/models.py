"""
Data Models module for command inputs and outputs.

This module defines Pydantic models for every artifact the commands emit:
torsion-order answers, sweep configuration, records and summaries,
specialization certificates with their verification reports, and the
lemma audit table.
"""
import re
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

class OrderResult(BaseModel):
    """Torsion order of a single point."""
    p: int = Field(..., ge=2, description="Characteristic")
    e: int = Field(..., ge=1, description="Degree of F_q over F_p")
    r: int = Field(..., ge=2, description="Rank of the Drinfeld module")
    ell: int = Field(..., ge=1, description="Degree of the common field over F_q")
    tau: List[int] = Field(..., description="tau, coordinates over F_q")
    lam: List[int] = Field(..., description="lambda, coordinates over F_q")
    point: List[int] = Field(..., description="The point c, coordinates over F_q")
    order: List[int] = Field(..., description="Monic order polynomial in T, low degree first")
    order_text: str
    degree: int = Field(..., ge=0)

    @model_validator(mode="after")
    def degree_matches_order(self):
        if self.degree != len(self.order) - 1 or self.order[-1] != 1:
            raise ValueError("order must be monic of the stated degree")
        return self

class SweepConfig(BaseModel):
    """Parameters of a torsion-order sweep."""
    p: int = Field(2, ge=2)
    e: int = Field(1, ge=1)
    r: int = Field(2, ge=2)
    a: str = Field(..., description="First generic point, a rational function in t")
    b: str = Field(..., description="Second generic point, a rational function in t")
    ells: List[int] = Field(..., min_length=1, description="Field degrees of tau")
    m_values: List[int] = Field(..., min_length=1, description="Order-degree thresholds M")
    lambda_deg: Optional[int] = Field(None, ge=1, description="Degree j of the lambda field (default: ell)")
    tau_selection: str = Field("all", description="'all' or 'sample:k'")
    seed: int = 0
    out: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    threads: int = Field(1, ge=1)
    timing: bool = False
    cross_check: bool = False
    cap: int = Field(10_000, ge=1)

    @field_validator("ells", "m_values")
    @classmethod
    def positive_values(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("field degrees and thresholds must be positive")
        return sorted(set(values))

    @field_validator("tau_selection")
    @classmethod
    def known_selection(cls, value: str) -> str:
        if not re.fullmatch(r"all|sample:\d+", value):
            raise ValueError("tau selection must be 'all' or 'sample:k'")
        return value

class SweepRecord(BaseModel):
    """One (tau, lambda) observation, or a skipped or degenerate tau."""
    ell: int = Field(..., ge=1)
    tau: List[int]
    status: Literal["ok", "skipped", "degenerate"]
    field_degree: int = Field(..., ge=1, description="Degree over F_q of the field holding tau and lambda")
    lam: Optional[List[int]] = None
    deg_ord_a: Optional[int] = Field(None, ge=0)
    deg_ord_b: Optional[int] = Field(None, ge=0)
    both_le_m: Optional[Dict[int, bool]] = Field(None, description="Both orders of degree <= M, per M")
    timing_ms: Optional[float] = None
    cross_check_ok: Optional[bool] = None

    @model_validator(mode="after")
    def orders_fit_field(self):
        for degree in (self.deg_ord_a, self.deg_ord_b):
            if degree is not None and degree > self.field_degree:
                raise ValueError("an order cannot exceed the field degree")
        return self

class SweepSummaryRow(BaseModel):
    """Exceptional-lambda counts for one (ell, M)."""
    ell: int
    M: int
    lambda_field_size: int
    taus: int = Field(..., description="Selected generators tau")
    skipped: int = Field(..., description="tau with a vanishing denominator")
    degenerate: int = Field(0, description="tau with a(tau) = 0 or b(tau) = 0")
    max_exceptional: Optional[int] = None
    min_exceptional: Optional[int] = None
    per_tau: List[Tuple[List[int], int]] = Field(default_factory=list)

class SweepSummary(BaseModel):
    config: SweepConfig
    rows: List[SweepSummaryRow]
    statistics: Dict[str, int] = Field(default_factory=dict)

class CertificateFactorsModel(BaseModel):
    delta: List[int]
    content_h: List[int]
    lc_h: List[int]
    disc_sf_h: List[int]

class CertificateModel(BaseModel):
    """Serialized specialization certificate."""
    cert: List[int] = Field(..., description="Certificate polynomial, low degree first")
    cert_text: str
    factors: CertificateFactorsModel
    paper_cert: List[int] = Field(..., description="delta * content(h)")
    h: List[Tuple[int, List[int]]] = Field(..., description="Primitive gcd of the system")
    generic_count: int = Field(..., ge=0)
    D: int = Field(..., ge=0)
    H: int = Field(..., ge=0)
    deg_cert: int
    deg_delta: int
    paper_bound: int
    guarded_bound: int
    path: Literal["trivial", "unit", "resultant", "bezout"]
    seed: int
    seed_trail: List[int] = Field(default_factory=list)
    sample_degree: int = Field(1, ge=1, description="Random coefficients were drawn from F_{q^k}, k = sample_degree")
    paper_strict: bool = False
    identity_checked: Optional[bool] = None

    @model_validator(mode="after")
    def certificate_is_nonzero(self):
        if not self.cert:
            raise ValueError("a certificate is a non-zero polynomial")
        return self

class VerificationFailure(BaseModel):
    ell: int
    tau: List[int]
    n_tau: Optional[int] = Field(None, description="None when every polynomial vanishes")
    generic_count: int

class VerificationSummary(BaseModel):
    """Exhaustive certificate check over F_{q^ell}, ell <= ell_max."""
    ell_max: int = Field(..., ge=1)
    passed: int
    excluded: int
    failed: int
    paper_counterexamples: int = Field(0, description="tau where delta*content(h) alone does not exclude a failure")
    per_ell: Dict[int, Dict[str, int]]
    failures: List[VerificationFailure] = Field(default_factory=list)

class CertificateReport(BaseModel):
    system: List[List[Tuple[int, List[int]]]]
    certificate: CertificateModel
    verification: Optional[VerificationSummary] = None

class AuditRow(BaseModel):
    """One quantitative law checked on one instance."""
    check: str
    instance: str
    value: Optional[int] = None
    bound: Optional[int] = None
    status: Literal["pass", "fail", "skipped: cap"]

class AuditReport(BaseModel):
    rows: List[AuditRow]
    passed: int
    failed: int
    skipped: int
