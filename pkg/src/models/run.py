from pydantic import BaseModel, ConfigDict, Field

from .dataset import DatasetConfig
from .training import LossWeights, TrainConfig, UpsampleTrainConfig


class RunConfig(BaseModel):
    """Everything a config file can set, one model per section."""

    model_config = ConfigDict(extra="forbid")

    loss: LossWeights = Field(default_factory=LossWeights)
    train: TrainConfig = Field(default_factory=TrainConfig)
    upsampler: UpsampleTrainConfig = Field(default_factory=UpsampleTrainConfig)
    dataset: DatasetConfig = Field(default_factory=DatasetConfig)

    @classmethod
    def sections(cls) -> dict[str, type[BaseModel]]:
        return {name: field.annotation for name, field in cls.model_fields.items()}  # type: ignore[misc]
