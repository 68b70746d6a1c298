import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from codec import CodecWeights, decode
from colorimetry import (
    Y_MAX,
    linear_rgb_to_xyz,
    spectrum_to_xyz,
    srgb_encode,
    xyz_to_lab,
    xyz_to_linear_rgb,
)
from hadacodec import HadacodecError
from models.render import RenderMode
from spectral import N_SAMPLES

logger = logging.getLogger(__name__)

EXPOSURE_PERCENTILE = 99.0


class ImageError(HadacodecError, ValueError):
    pass


@dataclass(frozen=True)
class RenderStats:
    """
    Shading counters of a render.

    An event is one surface interaction; evaluations count the shader
    invocations needed to process all channels of that event (one per
    wavelength in spectral mode, one per RGB triple otherwise).
    """

    shading_events: int = 0
    shading_evaluations: int = 0
    passes: int = 1

    def __add__(self, other: "RenderStats") -> "RenderStats":
        return RenderStats(
            shading_events=self.shading_events + other.shading_events,
            shading_evaluations=self.shading_evaluations + other.shading_evaluations,
            passes=self.passes + other.passes,
        )


@dataclass(frozen=True, eq=False)
class ChannelImage:
    data: np.ndarray
    mode: Optional[RenderMode] = None
    seed: Optional[int] = None
    spp: Optional[int] = None
    path_hash: Optional[np.ndarray] = None
    stats: Optional[RenderStats] = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[-1] < 1:
            raise ImageError(f"images have shape (height, width, channels), got {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ImageError("image values must be finite")
        if np.any(data < 0):
            raise ImageError("image values must be non-negative")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def shading_evaluations(self) -> int:
        return self.stats.shading_evaluations if self.stats else 0


def _data(img: ChannelImage | np.ndarray) -> np.ndarray:
    data = img.data if isinstance(img, ChannelImage) else np.asarray(img, dtype=np.float64)
    if data.ndim != 3:
        raise ImageError(f"images have shape (height, width, channels), got {data.shape}")
    return data


def decode_image(latent: ChannelImage, codec: CodecWeights) -> ChannelImage:
    """Per-pixel decode of a k-channel latent image to an n-channel spectral image."""
    if latent.channels != codec.k:
        raise ImageError(f"latent image has {latent.channels} channels, codec expects {codec.k}")
    h, w, _ = latent.data.shape
    spectra = decode(codec, latent.data.reshape(-1, codec.k)).reshape(h, w, codec.n)
    return replace(latent, data=spectra)


def image_xyz(img: ChannelImage | np.ndarray) -> np.ndarray:
    """XYZ per pixel of a spectral (radiance convention) or linear RGB image."""
    data = _data(img)
    if data.shape[-1] == N_SAMPLES:
        return spectrum_to_xyz(data)
    if data.shape[-1] == 3:
        return linear_rgb_to_xyz(data)
    raise ImageError(f"cannot colour a {data.shape[-1]}-channel image; decode latent images first")


def linear_rgb(img: ChannelImage | np.ndarray) -> np.ndarray:
    data = _data(img)
    if data.shape[-1] == 3:
        return data
    return xyz_to_linear_rgb(image_xyz(data))


def exposure_for(reference: ChannelImage | np.ndarray) -> float:
    """Scale mapping the reference image's bright luminance percentile to 1."""
    y = image_xyz(reference)[..., 1]
    level = float(np.percentile(y, EXPOSURE_PERCENTILE)) if y.size else 0.0
    if level <= 0:
        logger.warning("reference image is black; using unit exposure")
        return 1.0
    return 1.0 / level


def image_to_srgb(img: ChannelImage | np.ndarray, exposure: Optional[float] = None) -> np.ndarray:
    """8-bit sRGB (h, w, 3); pass the same exposure to every image of a comparison."""
    if exposure is None:
        exposure = exposure_for(img)
    encoded = srgb_encode(linear_rgb(img) * exposure)
    return np.round(encoded * 255.0).astype(np.uint8)


def lab_image(img: ChannelImage | np.ndarray, exposure: float) -> np.ndarray:
    """CIELAB per pixel against the D65 white after scaling by the shared exposure."""
    return xyz_to_lab(image_xyz(img) * (exposure * Y_MAX))


def error_map(a: ChannelImage | np.ndarray, b: ChannelImage | np.ndarray) -> tuple[np.ndarray, float]:
    """Per-pixel MSE over linear sRGB channels and its mean over pixels."""
    rgb_a, rgb_b = linear_rgb(a), linear_rgb(b)
    if rgb_a.shape != rgb_b.shape:
        raise ImageError(f"image sizes differ: {rgb_a.shape[:2]} vs {rgb_b.shape[:2]}")
    mse = np.mean((rgb_a - rgb_b) ** 2, axis=-1)
    return mse, float(np.mean(mse)) if mse.size else 0.0


def error_map_to_gray(mse: np.ndarray) -> np.ndarray:
    """Error map as an 8-bit grey image normalised by its maximum."""
    peak = float(np.max(mse)) if mse.size else 0.0
    level = mse / peak if peak > 0 else np.zeros_like(mse)
    gray = np.round(np.sqrt(level) * 255.0).astype(np.uint8)
    return np.repeat(gray[..., None], 3, axis=-1)
