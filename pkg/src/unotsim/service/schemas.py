"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from .. import estimation, gate


class ComplexNumber(BaseModel):
    re: float
    im: float = 0.0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


class QubitStateModel(BaseModel):
    alpha: ComplexNumber
    beta: ComplexNumber


class MatrixModel(BaseModel):
    re: list[list[float]]
    im: list[list[float]]


class SweepRequest(BaseModel):
    n_min: int = Field(1, ge=1)
    n_max: int = Field(3, ge=1)
    m_min: int = Field(1, ge=1)
    m_max: int = Field(2, ge=1)
    samples: int = Field(0, ge=0)
    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _ranges(self):
        if self.n_max < self.n_min or self.m_max < self.m_min:
            raise ValueError("ranges must be nonempty (max >= min)")
        if self.n_max + self.m_max + 1 > gate.MAX_GATE_QUBITS:
            raise ValueError(f"n_max + m_max + 1 exceeds the gate bound {gate.MAX_GATE_QUBITS}")
        if 0 < self.samples < estimation.MIN_MC_SAMPLES:
            raise ValueError(
                f"samples must be 0 (analytic only) or >= {estimation.MIN_MC_SAMPLES}"
            )
        return self


class ReportRowModel(BaseModel):
    N: int
    M: int
    fidelity_unot: float
    fidelity_estimation: float
    fidelity_clone: float
    s_not: float
    s_clone: float
    delta_extremal_minus: float
    delta_extremal_plus: float
    separable: bool
    real_case_fidelity: float
    delta_estimation_mc: Optional[float] = None
    delta_estimation_mc_stderr: Optional[float] = None


class SweepResponse(BaseModel):
    rows: list[ReportRowModel]


class VerifyRequest(BaseModel):
    level: Literal["quick", "full"] = "quick"
    seed: int = Field(0, ge=0)


class CheckResultModel(BaseModel):
    name: str
    deviation: float
    tolerance: float
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    level: str
    passed: bool
    checks: list[CheckResultModel]


class RealCaseRequest(BaseModel):
    n_min: int = Field(1, ge=1)
    n_max: int = Field(10, ge=1)

    @model_validator(mode="after")
    def _ranges(self):
        if self.n_max < self.n_min:
            raise ValueError("range must be nonempty (n_max >= n_min)")
        if self.n_max > 1000:
            raise ValueError("n_max capped at 1000")
        return self


class RealCaseRow(BaseModel):
    N: int
    quantum: float
    classical: float
    gap: float


class RealCaseResponse(BaseModel):
    rows: list[RealCaseRow]


class GateReportRequest(BaseModel):
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    state: Optional[QubitStateModel] = None
    seed: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _capacity(self):
        if self.n + self.m + 1 > gate.MAX_GATE_QUBITS:
            raise ValueError(f"n + m + 1 exceeds the gate bound {gate.MAX_GATE_QUBITS}")
        return self


class GateReportResponse(BaseModel):
    fidelity_not: float
    fidelity_clone: float
    scaling_not: float
    scaling_clone: float
    c_single: MatrixModel
    ab_single: MatrixModel
    separable: Optional[bool] = None
    min_pt_eigenvalue: Optional[float] = None


class HealthResponse(BaseModel):
    status: str
    version: str
