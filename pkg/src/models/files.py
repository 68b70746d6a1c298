from datetime import datetime
from typing import Any, Literal, Optional
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

WEIGHTS_VERSION = 1


class CodecWeightsFile(BaseModel):
    """On-disk codec weights; arrays are flattened row-major."""

    model_config = ConfigDict(extra="forbid")

    format: Literal["hadacodec-codec"] = "hadacodec-codec"
    version: int = WEIGHTS_VERSION
    k: int = Field(gt=0, multiple_of=3)
    n: int = Field(gt=0)
    beta: float = Field(gt=0, allow_inf_nan=False)
    raw_enc: list[float]
    raw_dec: list[float]
    training_meta: Optional[dict[str, Any]] = None

    @model_validator(mode="after")
    def check_sizes(self) -> Self:
        if self.version != WEIGHTS_VERSION:
            raise ValueError(f"unsupported weights version {self.version}")
        expected = self.k * self.n
        if len(self.raw_enc) != expected or len(self.raw_dec) != expected:
            raise ValueError(
                f"raw arrays must hold k*n = {expected} values, "
                f"got {len(self.raw_enc)} and {len(self.raw_dec)}"
            )
        return self


class UpsamplerWeightsFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["hadacodec-upsampler"] = "hadacodec-upsampler"
    version: int = WEIGHTS_VERSION
    k: int = Field(gt=0, multiple_of=3)
    # input, hidden, hidden, k
    dims: list[int]
    weights: list[list[float]]
    biases: list[list[float]]
    training_meta: Optional[dict[str, Any]] = None

    @model_validator(mode="after")
    def check_sizes(self) -> Self:
        if self.version != WEIGHTS_VERSION:
            raise ValueError(f"unsupported weights version {self.version}")
        if len(self.dims) != 4 or self.dims[-1] != self.k:
            raise ValueError(f"dims must be [3, hidden, hidden, k], got {self.dims}")
        if len(self.weights) != 3 or len(self.biases) != 3:
            raise ValueError("expected three dense layers")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            fan_in, fan_out = self.dims[i], self.dims[i + 1]
            if len(w) != fan_in * fan_out or len(b) != fan_out:
                raise ValueError(f"layer {i} does not match dims {fan_in} -> {fan_out}")
        return self


class RunManifest(BaseModel):
    """What a command read and wrote, so a rerun can be checked against it."""

    tool: str = "hadacodec"
    version: str
    command: str
    argv: list[str] = Field(default_factory=list)
    seeds: dict[str, int] = Field(default_factory=dict)
    # path -> sha256
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)
    started_at: datetime
    elapsed_seconds: float = Field(ge=0)
    details: dict[str, Any] = Field(default_factory=dict)
