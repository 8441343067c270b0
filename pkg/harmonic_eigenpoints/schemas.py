"""
Pydantic models for the JSON documents read and written by the CLI.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class TermDocument(BaseModel):
    """One monomial: exponent vector and coefficient."""
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    exps: list[int]
    coef: float


class PolynomialDocument(BaseModel):
    """Homogeneous polynomial, terms in graded-lex order."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["polynomial"] = "polynomial"
    n_vars: int = Field(..., ge=1)
    degree: int = Field(..., ge=0)
    terms: list[TermDocument]


class TensorEntryDocument(BaseModel):
    """One stored tensor entry, 1-based sorted multi-index."""
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    idx: list[int]
    value: float


class TensorDocument(BaseModel):
    """Symmetric tensor in compact sorted-multi-index form."""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["tensor"] = "tensor"
    order: int = Field(..., ge=1)
    dim: int = Field(..., ge=1)
    entries: list[TensorEntryDocument]


class CriticalPointDocument(BaseModel):
    x: list[float]
    value: float
    lagrange_lambda: float
    morse_index: int
    nondegeneracy_margin: float
    residual: float


class SolveReportDocument(BaseModel):
    kind: Literal["report"] = "report"
    expected_count: int
    found_count: int
    euler_sum: int
    certified: bool
    degenerate_detected: bool
    diagnostics: str
    points: list[CriticalPointDocument]


class CertificateDocument(BaseModel):
    """Summary of a certified solver run."""
    count: int
    min_margin: float
    max_residual: float
    euler_sum: int
    index_census: dict[int, int]


class LevelDocument(BaseModel):
    n: int
    polynomial: PolynomialDocument
    tensor: TensorDocument
    epsilon_used: Optional[float] = None
    certificate: CertificateDocument


class ConstructionDocument(BaseModel):
    kind: Literal["construction"] = "construction"
    d: int
    levels: list[LevelDocument]
