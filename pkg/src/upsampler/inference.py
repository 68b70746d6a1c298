import logging
from dataclasses import dataclass

import numpy as np

from colorimetry import rgb_of_radiance, rgb_of_reflectance
from spectral import Role, SpectralCurve

from .mlp import UpsamplerError, UpsamplerWeights, forward

logger = logging.getLogger(__name__)


@dataclass
class ClampStats:
    """Counts network outputs raised to zero to stay in the codec domain."""

    evaluated: int = 0
    clamped: int = 0


def _checked(rgb: np.ndarray) -> np.ndarray:
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.shape[-1] != 3:
        raise UpsamplerError(f"expected RGB triples, got trailing dimension {rgb.shape[-1]}")
    if not np.all(np.isfinite(rgb)):
        raise UpsamplerError("RGB input must be finite")
    return rgb


def upsample(uw: UpsamplerWeights, rgb: np.ndarray, stats: ClampStats | None = None) -> np.ndarray:
    """Latent code(s) for linear sRGB triple(s); negative outputs are clamped to 0."""
    rgb = _checked(rgb)
    z = forward(uw, rgb.reshape(-1, 3), rowwise=True).out
    negative = int(np.sum(z < 0))
    if negative:
        logger.warning(f"clamped {negative} negative upsampler outputs to zero")
    if stats is not None:
        stats.evaluated += z.size
        stats.clamped += negative
    return np.maximum(z, 0.0).reshape(rgb.shape[:-1] + (uw.k,))


def upsample_image(uw: UpsamplerWeights, image: np.ndarray, stats: ClampStats | None = None) -> np.ndarray:
    """(h, w, 3) linear RGB to an (h, w, k) latent image, pixel by pixel."""
    image = _checked(image)
    if image.ndim != 3:
        raise UpsamplerError(f"expected an (h, w, 3) image, got shape {image.shape}")
    return upsample(uw, image, stats)


def rgb_of(s: SpectralCurve | np.ndarray, kind: Role = Role.reflectance) -> np.ndarray:
    """
    Linear sRGB of a spectrum: reflectances under D65 (white -> 1), illuminants
    from their unit-peak SPD in the radiance convention.
    """
    values = s.values if isinstance(s, SpectralCurve) else np.asarray(s, dtype=np.float64)
    if kind == Role.reflectance:
        return rgb_of_reflectance(values)
    peak = np.max(values, axis=-1, keepdims=True)
    return rgb_of_radiance(values / np.where(peak > 0, peak, 1.0))


def spectral_roughness(values: np.ndarray) -> np.ndarray:
    """Mean squared second difference along wavelength."""
    values = np.asarray(values, dtype=np.float64)
    return np.mean(np.diff(values, n=2, axis=-1) ** 2, axis=-1)
