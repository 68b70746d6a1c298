try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class LossWeights(BaseModel):
    """Weights of the codec loss terms; defaults are the selected configuration."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    lambda_e2e: float = Field(default=0.5, ge=0, allow_inf_nan=False)
    lambda_rec: float = Field(default=0.75, ge=0, allow_inf_nan=False)
    lambda_code: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    lambda_col: float = Field(default=0.5, ge=0, allow_inf_nan=False)
    lambda_alg: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    def total_weight(self) -> float:
        return sum(self.model_dump().values())

    @classmethod
    def only(cls, **weights: float) -> "LossWeights":
        """All terms off except the ones given."""
        zero = dict.fromkeys(cls.model_fields, 0.0)
        return cls(**{**zero, **weights})


class TrainConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int = Field(default=6, gt=0, multiple_of=3)
    lr: float = Field(default=1e-3, gt=0)
    batch_size: int = Field(default=128, gt=0)
    max_epochs: int = Field(default=150, ge=0)
    patience: int = Field(default=15, ge=0)
    seed: int = Field(default=0, ge=0)
    val_fraction: float = Field(default=0.10, gt=0, lt=0.5)
    illum_scale_min: float = Field(default=0.5, gt=0)
    illum_scale_max: float = Field(default=2.0, gt=0)

    @model_validator(mode="after")
    def check_ranges(self) -> Self:
        if self.patience > self.max_epochs and self.max_epochs > 0:
            raise ValueError("patience must not exceed max_epochs")
        if self.illum_scale_min > self.illum_scale_max:
            raise ValueError("illum_scale_min must not exceed illum_scale_max")
        return self


class UpsampleTrainConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lr: float = Field(default=2e-3, gt=0)
    weight_decay: float = Field(default=1e-5, gt=0)
    batch_size: int = Field(default=64, gt=0)
    grad_clip_norm: float = Field(default=1.0, gt=0)
    epochs: int = Field(default=4500, ge=0)
    plateau_factor: float = Field(default=0.5, gt=0, lt=1)
    plateau_patience: int = Field(default=200, gt=0)
    min_lr: float = Field(default=1e-6, gt=0)
    lambda_color: float = Field(default=0.05, ge=0)
    lambda_maxabs: float = Field(default=0.3, ge=0)
    hidden: int = Field(default=128, gt=0)
    seed: int = Field(default=0, ge=0)
