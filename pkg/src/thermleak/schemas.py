"""Request/response models of the estimation service.

The same models are used by the FastAPI endpoints and by the CLI client, so
a CLI run and an HTTP round trip see identical payloads.
"""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from .project import Project


class LeakageRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    project: Project
    temp: float | None = Field(default=None, gt=0, description="K; default nmos t_ref")
    all_vectors: bool = False


class LeakageRow(BaseModel):
    gate: str
    inputs: str
    side: str
    w_eff_um: float
    i_off_a: float
    p_static_w: float


class LeakageIssue(BaseModel):
    gate: str
    inputs: str
    error: str


class LeakageResponse(BaseModel):
    temp: float
    rows: list[LeakageRow]
    issues: list[LeakageIssue]


class GridModel(BaseModel):
    nx: int
    ny: int
    dx: float
    dy: float
    mode: str
    values: list[list[float]]


class ThermalRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    project: Project
    nx: int = Field(default=64, ge=2)
    ny: int = Field(default=64, ge=2)
    mode: str = Field(default="rise", pattern="^(rise|absolute)$")


class ThermalResponse(BaseModel):
    grid: GridModel


class CosimRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    project: Project
    trace: bool = False
    max_iter: int | None = Field(default=None, ge=0, description="override")
    nx: int = Field(default=64, ge=2)
    ny: int = Field(default=64, ge=2)
    grid_mode: str = Field(default="absolute", pattern="^(rise|absolute)$")


class CosimIteration(BaseModel):
    index: int
    block_temps: dict[str, float]
    static_power: dict[str, float]
    total_power: float
    delta_t_max: float


class CosimResponse(BaseModel):
    status: str
    iterations: int
    final_temps: dict[str, float]
    final_static_power: dict[str, float]
    final_total_power: float
    trace: list[CosimIteration] | None = None
    grid: GridModel | None = None


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    project: Project


class VerifyRowModel(BaseModel):
    label: str
    model_value: float
    reference: float
    rel_err: float
    tolerance: float
    passed: bool


class VerifyCheckModel(BaseModel):
    name: str
    passed: bool


class VerifyCaseModel(BaseModel):
    name: str
    max_rel_err: float
    passed: bool
    rows: list[VerifyRowModel]
    checks: list[VerifyCheckModel]


class VerifyResponse(BaseModel):
    cases: list[VerifyCaseModel]
    all_passed: bool
