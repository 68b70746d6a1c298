from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class SplitConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    angular_bins: int = Field(default=180, ge=1)
    train_fraction: float = Field(default=0.70, gt=0, lt=1)
    seed: int = Field(default=0, ge=0)


class DatasetConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0)
    munsell: Optional[Path] = None
    lspdd: Optional[Path] = None
    standin_count: int = Field(default=1269, ge=0)
    target_y: float = Field(default=30.0, gt=0, lt=100)
    dedup_threshold: float = Field(default=0.95, gt=0, le=1)
    reflectance_bins: int = Field(default=180, ge=1)
    illumination_bins: int = Field(default=36, ge=1)
    train_fraction: float = Field(default=0.70, gt=0, lt=1)
