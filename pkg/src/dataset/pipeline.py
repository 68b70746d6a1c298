import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from fileio.spectra import read_spectra, write_spectra
from models.dataset import DatasetConfig, SplitConfig
from spectral import N_SAMPLES, Role, SpectralCurve, WAVELENGTHS

from .filtering import cosine_dedup
from .illuminants import flip_augment, gen_illuminants_synthetic, load_lamps
from .reflectances import (
    gen_optimal_reflectances,
    gen_smooth_saturated,
    load_munsell,
    munsell_standin,
)
from .split import ring_sector_split
from .types import DatasetError, LabeledSpectrum, Origin, Split

logger = logging.getLogger(__name__)

DATASET_MANIFEST = "dataset.json"


@dataclass
class SpectralDataset:
    spectra: list[LabeledSpectrum]
    stats: dict = field(default_factory=dict)

    def select(self, kind: Role, split: Split) -> list[LabeledSpectrum]:
        return [s for s in self.spectra if s.kind == kind and s.split == split]

    def array(self, kind: Role, split: Split) -> np.ndarray:
        chosen = self.select(kind, split)
        if not chosen:
            return np.empty((0, N_SAMPLES))
        return np.stack([s.curve.values for s in chosen])

    @property
    def reflectance_train(self) -> np.ndarray:
        return self.array(Role.reflectance, Split.train)

    @property
    def reflectance_test(self) -> np.ndarray:
        return self.array(Role.reflectance, Split.test)

    @property
    def illumination_train(self) -> np.ndarray:
        return self.array(Role.illumination, Split.train)

    @property
    def illumination_test(self) -> np.ndarray:
        return self.array(Role.illumination, Split.test)


def _counts(spectra: list[LabeledSpectrum]) -> dict[str, int]:
    return dict(sorted(Counter(s.origin.value for s in spectra).items()))


def build_reflectances(cfg: DatasetConfig) -> list[LabeledSpectrum]:
    if cfg.munsell is not None:
        base = load_munsell(cfg.munsell)
    else:
        logger.info(f"no measured reflectances given, generating {cfg.standin_count} stand-ins")
        base = munsell_standin(cfg.standin_count, cfg.seed)
    return base + gen_optimal_reflectances(y0=cfg.target_y) + gen_smooth_saturated(y0=cfg.target_y)


def build_illuminants(cfg: DatasetConfig) -> tuple[list[LabeledSpectrum], dict]:
    pools = gen_illuminants_synthetic(cfg.seed)
    broadband = pools["broadband"]
    if cfg.lspdd is not None:
        broadband = load_lamps(cfg.lspdd) + broadband
    broadband = cosine_dedup(broadband, cfg.dedup_threshold)
    merged = broadband + flip_augment(broadband) + pools["daylight"] + pools["narrowband"]
    kept = cosine_dedup(merged, cfg.dedup_threshold)
    stats = {"illumination_candidates": _counts(merged), "dedup_kept": len(kept)}
    return kept, stats


def build_dataset(cfg: DatasetConfig) -> SpectralDataset:
    """Generate, filter and split the reflectance and illumination sets."""
    reflectances = build_reflectances(cfg)
    illuminants, stats = build_illuminants(cfg)
    if not reflectances or not illuminants:
        raise DatasetError("dataset generation produced no reflectances or no illuminants")

    split = dict(train_fraction=cfg.train_fraction, seed=cfg.seed)
    reflectances = ring_sector_split(
        reflectances, SplitConfig(angular_bins=cfg.reflectance_bins, **split)
    )
    illuminants = ring_sector_split(
        illuminants, SplitConfig(angular_bins=cfg.illumination_bins, **split)
    )
    dataset = SpectralDataset(reflectances + illuminants)
    dataset.stats = {
        **stats,
        "reflectance_origins": _counts(reflectances),
        "illumination_origins": _counts(illuminants),
        "counts": {
            f"{kind.value}_{split.value}": len(dataset.select(kind, split))
            for kind in (Role.reflectance, Role.illumination)
            for split in (Split.train, Split.test)
        },
    }
    logger.info(f"dataset counts: {dataset.stats['counts']}")
    return dataset


def _file(kind: Role, split: Split) -> str:
    return f"{kind.value}_{split.value}.csv"


def write_dataset(dataset: SpectralDataset, out_dir: Union[str, Path]) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind in (Role.reflectance, Role.illumination):
        for split in (Split.train, Split.test):
            chosen = dataset.select(kind, split)
            path = out_dir / _file(kind, split)
            write_spectra(path, [s.id for s in chosen], dataset.array(kind, split))
            written.append(path)
    origins = {s.id: s.origin.value for s in dataset.spectra}
    path = out_dir / DATASET_MANIFEST
    payload = {"stats": dataset.stats, "origins": origins}
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    written.append(path)
    return written


def load_dataset(data_dir: Union[str, Path]) -> SpectralDataset:
    data_dir = Path(data_dir)
    origins: dict[str, str] = {}
    stats: dict = {}
    manifest = data_dir / DATASET_MANIFEST
    if manifest.exists():
        payload = json.loads(manifest.read_text(encoding="utf-8"))
        origins, stats = payload.get("origins", {}), payload.get("stats", {})

    spectra = []
    for kind in (Role.reflectance, Role.illumination):
        default_origin = Origin.munsell if kind == Role.reflectance else Origin.measured_lamp
        for split in (Split.train, Split.test):
            path = data_dir / _file(kind, split)
            if not path.exists():
                raise DatasetError(f"missing dataset file {path}")
            table = read_spectra(path)
            if len(table) == 0:
                continue
            on_grid = len(table.wavelengths) == N_SAMPLES and np.allclose(
                table.wavelengths, WAVELENGTHS, atol=1e-6
            )
            if not on_grid:
                raise DatasetError(f"{path} is not sampled on the canonical grid")
            for spectrum_id, values in zip(table.ids, table.values):
                origin = Origin(origins.get(spectrum_id, default_origin.value))
                curve = SpectralCurve(values, kind)
                spectra.append(LabeledSpectrum(spectrum_id, curve, origin, split))
    return SpectralDataset(spectra, stats)
