from .dataset import DatasetConfig, SplitConfig
from .files import CodecWeightsFile, RunManifest, UpsamplerWeightsFile
from .render import RenderJob, RenderMode
from .run import RunConfig
from .training import LossWeights, TrainConfig, UpsampleTrainConfig

__all__ = [
    "CodecWeightsFile",
    "DatasetConfig",
    "LossWeights",
    "RenderJob",
    "RenderMode",
    "RunConfig",
    "RunManifest",
    "SplitConfig",
    "TrainConfig",
    "UpsampleTrainConfig",
    "UpsamplerWeightsFile",
]
