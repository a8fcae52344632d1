"""Schemas for synthetic scene generation and on-disk datasets."""

from __future__ import annotations

from datetime import datetime, timezone
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# per-view augmentation draws for synthetic pairs
AUGMENT_SIGMAS: tuple[float, ...] = (0.0, 10.0, 15.0)
AUGMENT_FACTORS: tuple[float, ...] = (0.8, 1.0, 1.2)


class DatasetRole(str, Enum):
    DOMAIN = "domain"
    SYNTHETIC = "synthetic"
    VAL = "val"
    TEST = "test"

    @property
    def keeps_ground_truth(self) -> bool:
        """Whether ground truth is written next to the views (held out for test)."""
        return self in (DatasetRole.SYNTHETIC, DatasetRole.TEST)

    @property
    def degraded(self) -> bool:
        return self is not DatasetRole.SYNTHETIC


class SceneSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    height: int = Field(160, ge=1)
    width: int = Field(160, ge=1)
    num_shapes: int = Field(4, ge=0)
    disp_range: tuple[int, int] = (2, 12)
    texture_scale: float = Field(8.0, gt=0, description="period scale of the sinusoid texture, pixels")
    seed: int = 0
    max_disparity: int = Field(16, ge=1, description="largest disparity the model can output")

    @model_validator(mode="after")
    def _check_range(self):
        lo, hi = self.disp_range
        if lo < 0 or hi < lo:
            raise ValueError(f"disp_range must satisfy 0 <= lo <= hi, got {self.disp_range}")
        if hi >= self.max_disparity:
            raise ValueError(f"disp_range upper bound {hi} must be < max_disparity {self.max_disparity}")
        return self


class DomainDegradation(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    noise_sigmas: tuple[float, ...] = AUGMENT_SIGMAS
    brightness_factors: tuple[float, ...] = AUGMENT_FACTORS
    gamma_delta: float = Field(0.15, ge=0)
    v_shift: float = Field(0.75, ge=0, description="max vertical misalignment of the right view, pixels")

    @field_validator("noise_sigmas")
    @classmethod
    def _sigmas(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value or any(s < 0 for s in value):
            raise ValueError("noise_sigmas must be a non-empty set of values >= 0")
        return value

    @field_validator("brightness_factors")
    @classmethod
    def _factors(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if not value or any(f <= 0 for f in value):
            raise ValueError("brightness_factors must be a non-empty set of values > 0")
        return value

    @classmethod
    def identity(cls) -> "DomainDegradation":
        return cls(noise_sigmas=(0.0,), brightness_factors=(1.0,), gamma_delta=0.0, v_shift=0.0)


class GenDataSpec(BaseModel):
    """Contents of the ``gen-data --spec`` JSON."""

    model_config = ConfigDict(extra="forbid")

    scene: SceneSpec = Field(default_factory=SceneSpec)
    degradation: DomainDegradation = Field(default_factory=DomainDegradation)
    resize_factor: float = Field(1.0, gt=0, description="applied to views and ground truth after generation")
    max_disparity_limit: Optional[float] = Field(
        None, description="drop synthetic pairs whose ground-truth maximum exceeds this"
    )


class DatasetEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    seed: int
    left: str
    right: str
    ground_truth: Optional[str] = None
    occlusion: Optional[str] = None


class DatasetManifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    role: DatasetRole
    spec: GenDataSpec
    entries: list[DatasetEntry] = Field(default_factory=list)
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
