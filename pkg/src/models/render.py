from enum import Enum
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RenderMode(str, Enum):
    spectral = "spectral"
    latent = "latent"
    rgb = "rgb"


class RenderJob(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    mode: RenderMode = RenderMode.spectral
    width: int = Field(default=64, gt=0)
    height: int = Field(default=64, gt=0)
    spp: int = Field(default=16, ge=1)
    # -1 is unbounded depth with Russian roulette
    max_depth: int = 3
    seed: int = Field(default=0, ge=0)
    jitter: bool = True

    @model_validator(mode="after")
    def check_depth(self) -> Self:
        if self.max_depth < 1 and self.max_depth != -1:
            raise ValueError(f"max_depth must be >= 1 or -1, got {self.max_depth}")
        return self

    @property
    def unbounded(self) -> bool:
        return self.max_depth == -1
