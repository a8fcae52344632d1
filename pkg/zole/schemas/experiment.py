from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from zole.schemas.config import AdaptConfig, PretrainConfig
from zole.schemas.datasets import DomainDegradation, SceneSpec


class DatasetCounts(BaseModel):
    model_config = ConfigDict(extra="forbid")

    synthetic: int = Field(40, ge=1)
    domain: int = Field(40, ge=1)
    val: int = Field(10, ge=1)
    test: int = Field(10, ge=1)


class ExperimentConfig(BaseModel):
    """Desk-scale comparison of ZOLE, ZOLE-S and plain synthetic finetuning."""

    model_config = ConfigDict(extra="forbid")

    seed: int = 0
    scene: SceneSpec = Field(default_factory=SceneSpec)
    degradation: DomainDegradation = Field(default_factory=DomainDegradation)
    counts: DatasetCounts = Field(default_factory=DatasetCounts)
    pretrain: PretrainConfig = Field(default_factory=PretrainConfig)
    # desk-scale run length; lr is untuned and larger than the published 5e-5
    adapt: AdaptConfig = Field(default_factory=lambda: AdaptConfig(k_max=1000, validate_every=100, lr=2e-3))
