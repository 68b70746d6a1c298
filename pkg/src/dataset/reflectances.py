import logging
from pathlib import Path
from typing import Union

import numpy as np

from colorimetry import cmf_table, linear_rgb_to_xyz, xy_of_xyz, xyz_of_xy
from fileio.spectra import read_spectra
from spectral import (
    VISIBLE_MAX,
    VISIBLE_MIN,
    WAVELENGTHS,
    Role,
    SpectralCurve,
    WavelengthGrid,
    resample_values,
)
from utils.seeding import stream

from . import lsq
from .types import DatasetError, LabeledSpectrum, Origin

logger = logging.getLogger(__name__)

TARGET_Y = 30.0
OPTIMAL_HUES = 12
OPTIMAL_SATURATIONS = (0.6, 0.98, 3)
SMOOTH_HUES = 24
SMOOTH_SATURATIONS = (0.7, 0.98, 6)
BASIS_COUNT = 8
BASIS_SIGMA = 40.0


def hue_rgb(hue: float) -> np.ndarray:
    """Fully saturated linear RGB direction for a hue angle in turns [0, 1)."""
    k = (np.array([5.0, 3.0, 1.0]) + 6.0 * hue) % 6.0
    return 1.0 - np.clip(np.minimum(k, 4.0 - k), 0.0, 1.0)


def hue_targets(hues: int, saturations: np.ndarray, y0: float = TARGET_Y) -> list[tuple[str, np.ndarray]]:
    """
    Target XYZ per (hue, saturation): the hue's chromaticity mixed toward the D65
    white linearly in xy by the saturation, at luminance y0.
    """
    white_xy = xy_of_xyz(cmf_table().white_xyz)
    targets = []
    for h in range(hues):
        hue_xy = xy_of_xyz(linear_rgb_to_xyz(hue_rgb(h / hues)))
        for j, s in enumerate(saturations):
            x, y = (1.0 - s) * white_xy + s * hue_xy
            targets.append((f"h{h:02d}-s{j}", xyz_of_xy(x, y, y0)))
    return targets


def solve_reflectance(target_xyz: np.ndarray, support: np.ndarray | None = None) -> lsq.LsqResult:
    """Reflectance with Y = target Y and X, Z as close as possible to the target."""
    w = cmf_table().w_xyz
    hi = WavelengthGrid.visible_mask().astype(np.float64) if support is None else support
    lo = np.zeros_like(hi)
    x0 = hi * target_xyz[1] / max(float(w[1] @ hi), 1e-12)
    return lsq.solve(w[[0, 2]], target_xyz[[0, 2]], w[1], target_xyz[1], lo, hi, x0=x0)


def gen_optimal_reflectances(
    hues: int = OPTIMAL_HUES,
    s_range: tuple[float, float] = OPTIMAL_SATURATIONS[:2],
    levels: int = OPTIMAL_SATURATIONS[2],
    y0: float = TARGET_Y,
) -> list[LabeledSpectrum]:
    out = []
    for name, target in hue_targets(hues, np.linspace(*s_range, levels), y0):
        try:
            result = solve_reflectance(target)
        except lsq.InfeasibleTarget as e:
            logger.warning(f"skipping optimal target {name}: {e}")
            continue
        values = np.clip(result.x, 0.0, 1.0)
        out.append(LabeledSpectrum(f"optimal-{name}", SpectralCurve(values, Role.reflectance), Origin.optimal))
    return out


def gaussian_basis(count: int = BASIS_COUNT, sigma: float = BASIS_SIGMA) -> np.ndarray:
    """(n, count) Gaussians centred uniformly on the visible range, zero outside it."""
    centers = np.linspace(VISIBLE_MIN, VISIBLE_MAX, count)
    basis = np.exp(-0.5 * ((WAVELENGTHS[:, None] - centers[None, :]) / sigma) ** 2)
    return basis * WavelengthGrid.visible_mask()[:, None]


def gen_smooth_saturated(
    hues: int = SMOOTH_HUES,
    s_range: tuple[float, float] = SMOOTH_SATURATIONS[:2],
    levels: int = SMOOTH_SATURATIONS[2],
    y0: float = TARGET_Y,
) -> list[LabeledSpectrum]:
    """Reflectances spanned by non-negative Gaussian bases, fitted in coefficient space."""
    basis = gaussian_basis()
    w = cmf_table().w_xyz @ basis  # (3, G)
    lo = np.zeros(basis.shape[1])
    hi = np.ones(basis.shape[1])
    out = []
    for name, target in hue_targets(hues, np.linspace(*s_range, levels), y0):
        try:
            result = lsq.solve(w[[0, 2]], target[[0, 2]], w[1], target[1], lo, hi)
        except lsq.InfeasibleTarget as e:
            logger.warning(f"skipping smooth target {name}: {e}")
            continue
        values = np.clip(basis @ result.x, 0.0, 1.0)
        out.append(
            LabeledSpectrum(
                f"smooth-{name}", SpectralCurve(values, Role.reflectance), Origin.smooth_saturated
            )
        )
    return out


def munsell_standin(count: int = 64, seed: int = 0) -> list[LabeledSpectrum]:
    """Smooth low-order Fourier reflectances for running without measured data."""
    rng = stream(seed, "munsell-standin")
    mask = WavelengthGrid.visible_mask()
    t = (WAVELENGTHS - VISIBLE_MIN) / (VISIBLE_MAX - VISIBLE_MIN)
    harmonics = np.arange(1, 4)
    out = []
    for i in range(count):
        a = rng.normal(0.0, 1.0, 3) / harmonics
        b = rng.normal(0.0, 1.0, 3) / harmonics
        curve = np.cos(2 * np.pi * np.outer(t, harmonics)) @ a + np.sin(2 * np.pi * np.outer(t, harmonics)) @ b
        visible = curve[mask]
        lo_v = rng.uniform(0.02, 0.4)
        hi_v = rng.uniform(lo_v + 0.1, 0.95)
        span = visible.max() - visible.min()
        scaled = lo_v + (curve - visible.min()) * ((hi_v - lo_v) / span if span > 0 else 0.0)
        values = np.clip(scaled, 0.0, 1.0) * mask
        out.append(
            LabeledSpectrum(f"munsell-standin-{i:03d}", SpectralCurve(values, Role.reflectance), Origin.munsell_standin)
        )
    return out


def load_munsell(path: Union[str, Path]) -> list[LabeledSpectrum]:
    """Measured reflectances from a spectra CSV: resampled, zeroed outside the visible range, clamped to [0, 1]."""
    table = read_spectra(path)
    if len(table) == 0:
        logger.warning(f"{path}: no reflectance spectra")
        return []
    if len(table.wavelengths) < 2:
        raise DatasetError(f"{path}: need at least two wavelength samples")
    mask = WavelengthGrid.visible_mask()
    out = []
    for spectrum_id, values in zip(table.ids, table.values):
        resampled = resample_values(values, table.wavelengths)
        resampled = np.clip(np.nan_to_num(resampled, nan=0.0), 0.0, 1.0) * mask
        out.append(LabeledSpectrum(spectrum_id, SpectralCurve(resampled, Role.reflectance), Origin.munsell))
    return out
