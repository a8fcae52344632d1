"""Hyperparameter schemas.

Defaults are the published desk-scale values: τ=1.2, λ=1.5 on the mean patch
regularizer, exemplar weights 0.3 / 1 / 0.8, α=0.2, 20×20 patches, r=1.5,
batch size 6, lr 5e-5, 10⁴ iterations, validation every 500.
Every model forbids unknown keys so a typo in a JSON config is an error.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class LossWeights(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    tau: float = Field(1.2, ge=0, description="weight of the synthetic L1 term")
    lambda_agg: float = Field(1.5, ge=0, description="weight of the mean per-patch regularizer")
    w_left: float = Field(0.3, ge=0)
    w_curr: float = Field(1.0, ge=0)
    w_fine: float = Field(0.8, ge=0)
    alpha: float = Field(0.2, ge=0, description="spatial term of the pixel distance")
    patch_side: int = Field(20, ge=1)


class ToyModelConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    max_disparity: int = Field(16, ge=1)
    width: int = Field(8, ge=1, description="channels of both convolution layers")
    in_channels: int = 3

    @field_validator("in_channels")
    @classmethod
    def _gray_or_color(cls, value: int) -> int:
        if value not in (1, 3):
            raise ValueError("in_channels must be 1 or 3")
        return value


class TrainingConfig(BaseModel):
    """Fields shared by every run of the training loop."""

    model_config = ConfigDict(extra="forbid")

    batch_size: int = Field(6, ge=1)
    lr: float = Field(5e-5, gt=0)
    k_max: int = Field(10_000, ge=0)
    validate_every: int = Field(500, ge=1)
    weights: LossWeights = Field(default_factory=LossWeights)
    seed: int = 0
    crop_size: int = Field(160, ge=1)
    workers: int = Field(1, ge=1)
    augment: bool = True

    @model_validator(mode="after")
    def _crop_tiles_patches(self):
        if self.crop_size % self.weights.patch_side:
            raise ValueError(
                f"crop_size {self.crop_size} must be a multiple of patch_side {self.weights.patch_side}"
            )
        return self


class AdaptConfig(TrainingConfig):
    r: float = Field(1.5, description="zoom ratio of the finer-grain target")

    @field_validator("r")
    @classmethod
    def _zoom_in(cls, value: float) -> float:
        if not value > 1:
            raise ValueError("r must be > 1")
        return value


class PretrainConfig(TrainingConfig):
    """Supervised training on synthetic pairs (produces the initial parameters)."""

    # plain L1 on ground truth, no graph term
    weights: LossWeights = Field(default_factory=lambda: LossWeights(tau=1.0, lambda_agg=0.0))
    # untuned desk-scale default; the toy model learns too slowly at 5e-5 from a random init
    lr: float = Field(1e-2, gt=0)
    k_max: int = Field(1000, ge=0)
    model: ToyModelConfig = Field(default_factory=ToyModelConfig)

    def as_adapt_config(self) -> AdaptConfig:
        """The equivalent degenerate adaptation run (no domain pairs, λ = 0)."""
        data = self.model_dump(exclude={"model"})
        data["weights"] = self.weights.model_copy(update={"lambda_agg": 0.0})
        return AdaptConfig.model_validate(data)
