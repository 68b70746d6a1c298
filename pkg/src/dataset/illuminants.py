import logging
from pathlib import Path
from typing import Union

import numpy as np

from colorimetry import blackbody_spd, daylight_spd
from fileio.spectra import read_spectra
from spectral import (
    VISIBLE_MAX,
    VISIBLE_MIN,
    WAVELENGTHS,
    Role,
    SpectralCurve,
    resample_values,
    zero_outside_visible,
)
from utils.seeding import stream

from .types import DatasetError, LabeledSpectrum, Origin

logger = logging.getLogger(__name__)

BLACKBODY_COUNT = 82
BLACKBODY_RANGE = (2000.0, 12000.0)
DAYLIGHT_CCTS = tuple(range(4000, 10001, 500))
NARROWBAND_CENTERS = 61
NARROWBAND_SIGMAS = (5.0, 10.0, 20.0)
NARROWBAND_PAIRS = 184
PAIR_AMPLITUDE = (0.3, 1.0)


def unit_peak(values: np.ndarray) -> np.ndarray | None:
    """Visible-range curve scaled to max 1; None for an all-zero curve."""
    values = zero_outside_visible(np.maximum(np.asarray(values, dtype=np.float64), 0.0))
    peak = values.max()
    if not np.isfinite(peak) or peak <= 0:
        return None
    out = values / peak
    # exact 1 at the peak
    out[np.argmax(values)] = 1.0
    return out


def _illuminant(spectrum_id: str, values: np.ndarray, origin: Origin) -> LabeledSpectrum | None:
    normalized = unit_peak(values)
    if normalized is None:
        logger.warning(f"dropping all-zero illuminant {spectrum_id}")
        return None
    return LabeledSpectrum(spectrum_id, SpectralCurve(normalized, Role.illumination), origin)


def gen_blackbody(count: int = BLACKBODY_COUNT) -> list[LabeledSpectrum]:
    ccts = np.logspace(np.log10(BLACKBODY_RANGE[0]), np.log10(BLACKBODY_RANGE[1]), count)
    spectra = (
        _illuminant(f"blackbody-{t:.0f}K", blackbody_spd(t), Origin.broadband_synth) for t in ccts
    )
    return [s for s in spectra if s is not None]


def gen_daylight(ccts=DAYLIGHT_CCTS) -> list[LabeledSpectrum]:
    spectra = (_illuminant(f"daylight-{t}K", daylight_spd(t), Origin.daylight_synth) for t in ccts)
    return [s for s in spectra if s is not None]


def gaussian_peak(center: float, sigma: float) -> np.ndarray:
    return np.exp(-0.5 * ((WAVELENGTHS - center) / sigma) ** 2)


def gen_narrowband(seed: int = 0) -> list[LabeledSpectrum]:
    """Single Gaussian peaks on every centre and width, then seeded two-peak mixtures."""
    centers = np.linspace(VISIBLE_MIN, VISIBLE_MAX, NARROWBAND_CENTERS)
    out = []
    for sigma in NARROWBAND_SIGMAS:
        for c in centers:
            spectrum = _illuminant(
                f"narrow-{c:.0f}nm-{sigma:.0f}", gaussian_peak(c, sigma), Origin.narrowband_synth
            )
            if spectrum is not None:
                out.append(spectrum)

    rng = stream(seed, "narrowband-pairs")
    for i in range(NARROWBAND_PAIRS):
        c1, c2 = rng.choice(centers, size=2, replace=False)
        s1, s2 = rng.choice(NARROWBAND_SIGMAS, size=2)
        amplitude = rng.uniform(*PAIR_AMPLITUDE)
        values = gaussian_peak(c1, s1) + amplitude * gaussian_peak(c2, s2)
        spectrum = _illuminant(f"narrow-pair-{i:03d}", values, Origin.narrowband_synth)
        if spectrum is not None:
            out.append(spectrum)
    return out


def gen_illuminants_synthetic(seed: int = 0) -> dict[str, list[LabeledSpectrum]]:
    """Synthetic illuminant pools, unit-peak, before flipping and filtering."""
    return {
        "broadband": gen_blackbody(),
        "daylight": gen_daylight(),
        "narrowband": gen_narrowband(seed),
    }


def flip_augment(broadband: list[LabeledSpectrum]) -> list[LabeledSpectrum]:
    """max - curve inside the visible range, renormalized; flat curves vanish and are dropped."""
    out = []
    for s in broadband:
        values = s.curve.values
        spectrum = _illuminant(f"{s.id}-flipped", values.max() - values, Origin.flipped)
        if spectrum is not None:
            out.append(spectrum)
    return out


def load_lamps(path: Union[str, Path]) -> list[LabeledSpectrum]:
    """Measured lamp SPDs from a spectra CSV, resampled and unit-peak normalized."""
    table = read_spectra(path)
    if len(table) == 0:
        logger.warning(f"{path}: no lamp spectra")
        return []
    if len(table.wavelengths) < 2:
        raise DatasetError(f"{path}: need at least two wavelength samples")
    out = []
    for spectrum_id, values in zip(table.ids, table.values):
        resampled = np.nan_to_num(resample_values(values, table.wavelengths), nan=0.0)
        spectrum = _illuminant(spectrum_id, resampled, Origin.measured_lamp)
        if spectrum is not None:
            out.append(spectrum)
    return out
