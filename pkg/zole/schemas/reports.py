"""Records written to training logs and printed by the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class IterationRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    iter: int
    l1_dom: float
    l1_syn: float
    reg: float
    total: float


class ValidationRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    event: Literal["val"] = "val"
    iter: int
    psnr: float
    best_psnr: float


class PairMetrics(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    epe: Optional[float] = None
    three_pixel_error: Optional[float] = Field(None, alias="3er")
    psnr: float
    ssim: float


class AggregateMetrics(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: Literal["aggregate"] = "aggregate"
    count: int
    epe: Optional[float] = None
    three_pixel_error: Optional[float] = Field(None, alias="3er")
    psnr: float
    ssim: float


class SweepRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    ratio: float
    epe: float
    three_pixel_error: float = Field(alias="3er")


class ExperimentRow(BaseModel):
    model: str
    val_psnr: float
    test: AggregateMetrics


class ExperimentReport(BaseModel):
    rows: list[ExperimentRow]
    checks: dict[str, bool] = Field(default_factory=dict)
