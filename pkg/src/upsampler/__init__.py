from .inference import ClampStats, rgb_of, spectral_roughness, upsample, upsample_image
from .loss import UpsampleLoss, loss_upsample
from .mlp import UpsamplerError, UpsamplerWeights, backward, forward
from .trainer import UpsampleReport, train_upsampler, training_pairs

__all__ = [
    "ClampStats",
    "UpsampleLoss",
    "UpsampleReport",
    "UpsamplerError",
    "UpsamplerWeights",
    "backward",
    "forward",
    "loss_upsample",
    "rgb_of",
    "spectral_roughness",
    "train_upsampler",
    "training_pairs",
    "upsample",
    "upsample_image",
]
