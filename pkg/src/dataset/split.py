import logging

import numpy as np

from colorimetry import Y_MAX, spectrum_to_xyz, xyz_of_reflectance, xyz_to_lab
from models.dataset import SplitConfig
from spectral import Role
from utils.seeding import stream

from .types import LabeledSpectrum, Split

logger = logging.getLogger(__name__)

RING_QUANTILES = (1.0 / 3.0, 2.0 / 3.0)


def lab_coordinates(spectra: list[LabeledSpectrum]) -> np.ndarray:
    """
    Lab of each spectrum: reflectances under D65, illuminants as their own SPD
    scaled to Y = 100.
    """
    labs = np.zeros((len(spectra), 3))
    for i, s in enumerate(spectra):
        if s.kind == Role.reflectance:
            xyz = xyz_of_reflectance(s.curve)
        else:
            xyz = spectrum_to_xyz(s.curve)
            if xyz[1] <= 0:
                continue
            xyz = xyz * (Y_MAX / xyz[1])
        labs[i] = xyz_to_lab(xyz)
    return labs


def ring_sector_cells(ab: np.ndarray, angular_bins: int) -> np.ndarray:
    """Cell index (sector * rings + ring) per point around the median a*b* centre."""
    rel = ab - np.median(ab, axis=0)
    angle = np.arctan2(rel[:, 1], rel[:, 0])
    sector = np.minimum(((angle + np.pi) / (2 * np.pi) * angular_bins).astype(int), angular_bins - 1)
    radius = np.hypot(rel[:, 0], rel[:, 1])
    rings = len(RING_QUANTILES) + 1
    cells = np.empty(len(ab), dtype=int)
    for s in np.unique(sector):
        members = sector == s
        thresholds = np.quantile(radius[members], RING_QUANTILES)
        ring = np.searchsorted(thresholds, radius[members], side="right")
        cells[members] = s * rings + ring
    return cells


def ring_sector_split(spectra: list[LabeledSpectrum], cfg: SplitConfig) -> list[LabeledSpectrum]:
    """
    Train/test labels balanced over hue sectors and chroma rings.

    Each ring-sector cell sends floor(train_fraction * size + u), u ~ U(0, 1),
    random members to train and the rest to test, so the expected share is exact;
    cells with fewer than two members go to train.
    """
    if not spectra:
        return []
    cells = ring_sector_cells(lab_coordinates(spectra)[:, 1:], cfg.angular_bins)
    rng = stream(cfg.seed, "ring-sector-split")
    labels = [Split.train] * len(spectra)
    for cell in np.unique(cells):
        members = np.flatnonzero(cells == cell)
        if len(members) < 2:
            continue
        order = rng.permutation(members)
        n_train = int(np.floor(cfg.train_fraction * len(members) + rng.uniform()))
        for i in order[n_train:]:
            labels[i] = Split.test
    out = [s.with_split(label) for s, label in zip(spectra, labels)]
    n_train = sum(1 for s in out if s.split == Split.train)
    logger.info(f"split {len(out)} spectra: {n_train} train, {len(out) - n_train} test")
    return out
