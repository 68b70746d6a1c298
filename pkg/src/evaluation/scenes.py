import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import pandas as pd

from codec import CodecWeights
from colorimetry import delta_e76
from models.render import RenderJob, RenderMode
from renderer import (
    ChannelImage,
    Scene,
    decode_image,
    exposure_for,
    lab_image,
    linear_rgb,
    render,
    render_latent_multipass,
)
from upsampler import UpsamplerWeights

from .multibounce import BounceChainResult, EvaluationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SceneColorReport:
    mean_de76: float
    p95_de76: float
    mse: float
    pixels: int


def _pixel_errors(
    gt: ChannelImage | np.ndarray, test: ChannelImage | np.ndarray, exposure: Optional[float]
) -> tuple[np.ndarray, np.ndarray]:
    if exposure is None:
        exposure = exposure_for(gt)
    lab_gt, lab_test = lab_image(gt, exposure), lab_image(test, exposure)
    if lab_gt.shape != lab_test.shape:
        raise EvaluationError(f"image sizes differ: {lab_gt.shape[:2]} vs {lab_test.shape[:2]}")
    de = delta_e76(lab_gt, lab_test)
    mse = np.mean((linear_rgb(gt) - linear_rgb(test)) ** 2, axis=-1)
    return de, mse


def scene_color_report(
    gt: ChannelImage | np.ndarray, test: ChannelImage | np.ndarray, exposure: Optional[float] = None
) -> SceneColorReport:
    """
    Per-pixel ΔE76 (D65 white, one exposure for both images, taken from the
    ground truth unless given) and the mean squared error in linear sRGB.
    """
    de, mse = _pixel_errors(gt, test, exposure)
    return SceneColorReport(
        mean_de76=float(np.mean(de)),
        p95_de76=float(np.percentile(de, 95)),
        mse=float(np.mean(mse)),
        pixels=int(de.size),
    )


def pixel_error_frame(
    gt: ChannelImage | np.ndarray, test: ChannelImage | np.ndarray, exposure: Optional[float] = None
) -> pd.DataFrame:
    """One row per pixel: y, x, ΔE76 and linear sRGB MSE."""
    de, mse = _pixel_errors(gt, test, exposure)
    y, x = np.indices(de.shape)
    return pd.DataFrame({"y": y.ravel(), "x": x.ravel(), "de76": de.ravel(), "mse": mse.ravel()})


@dataclass
class RenderComparison:
    spectral: ChannelImage
    rgb: ChannelImage
    latent: ChannelImage
    latent_spectral: ChannelImage
    reports: dict[str, SceneColorReport]

    def to_frame(self) -> pd.DataFrame:
        rows = [{"method": name, **asdict(report)} for name, report in self.reports.items()]
        return pd.DataFrame(rows)


def compare_renders(
    scene: Scene,
    job: RenderJob,
    codec: CodecWeights,
    upsampler: Optional[UpsamplerWeights] = None,
    workers: Optional[int] = None,
) -> RenderComparison:
    """Spectral ground truth, RGB baseline and latent multi-pass render of one scene with one seed."""
    spectral = render(scene, job.model_copy(update={"mode": RenderMode.spectral}), workers=workers)
    rgb = render(scene, job.model_copy(update={"mode": RenderMode.rgb}), workers=workers)
    latent = render_latent_multipass(scene, job, codec, upsampler, workers=workers)
    decoded = decode_image(latent, codec)

    exposure = exposure_for(spectral)
    reports = {
        "rgb": scene_color_report(spectral, rgb, exposure),
        "latent": scene_color_report(spectral, decoded, exposure),
    }
    for name, report in reports.items():
        logger.info(f"{name}: mean ΔE76 {report.mean_de76:.3f}, MSE {report.mse:.3e}")
    return RenderComparison(spectral, rgb, latent, decoded, reports)


@dataclass(frozen=True)
class QualityOrdering:
    regressions: list[int]

    @property
    def ok(self) -> bool:
        return not self.regressions


def codec_quality_ordering(
    results_low: list[BounceChainResult], results_high: list[BounceChainResult]
) -> QualityOrdering:
    """Bounces at which the larger codec has a higher mean ΔE94 than the smaller one."""
    low = {r.bounce: r.mean for r in results_low}
    regressions = [r.bounce for r in results_high if r.bounce in low and r.mean > low[r.bounce]]
    for b in regressions:
        logger.warning(f"training regression: larger codec is worse at bounce {b}")
    return QualityOrdering(regressions)
