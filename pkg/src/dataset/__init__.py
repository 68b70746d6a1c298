from .filtering import cosine_dedup
from .illuminants import (
    flip_augment,
    gen_blackbody,
    gen_daylight,
    gen_illuminants_synthetic,
    gen_narrowband,
    load_lamps,
    unit_peak,
)
from .lsq import InfeasibleTarget, LsqResult
from .pipeline import SpectralDataset, build_dataset, load_dataset, write_dataset
from .reflectances import (
    gaussian_basis,
    gen_optimal_reflectances,
    gen_smooth_saturated,
    hue_rgb,
    hue_targets,
    load_munsell,
    munsell_standin,
    solve_reflectance,
)
from .split import lab_coordinates, ring_sector_split
from .types import DatasetError, LabeledSpectrum, Origin, Split

__all__ = [
    "DatasetError",
    "InfeasibleTarget",
    "LabeledSpectrum",
    "LsqResult",
    "Origin",
    "Split",
    "SpectralDataset",
    "build_dataset",
    "cosine_dedup",
    "flip_augment",
    "gaussian_basis",
    "gen_blackbody",
    "gen_daylight",
    "gen_illuminants_synthetic",
    "gen_narrowband",
    "gen_optimal_reflectances",
    "gen_smooth_saturated",
    "hue_rgb",
    "hue_targets",
    "lab_coordinates",
    "load_dataset",
    "load_lamps",
    "load_munsell",
    "munsell_standin",
    "ring_sector_split",
    "solve_reflectance",
    "unit_peak",
    "write_dataset",
]
