from .curve import (
    COSINE_EPS,
    Role,
    SpectralCurve,
    SpectralDomainError,
    SpectralFormatError,
    add,
    cosine_similarity,
    hadamard,
    resample,
    resample_values,
    scale,
    total_variation,
    validate_values,
    zero_outside_visible,
)
from .grid import (
    LAMBDA_MAX,
    LAMBDA_MIN,
    N_SAMPLES,
    STEP,
    VISIBLE_MAX,
    VISIBLE_MIN,
    WAVELENGTHS,
    WavelengthGrid,
)

__all__ = [
    "COSINE_EPS",
    "LAMBDA_MAX",
    "LAMBDA_MIN",
    "N_SAMPLES",
    "Role",
    "STEP",
    "SpectralCurve",
    "SpectralDomainError",
    "SpectralFormatError",
    "VISIBLE_MAX",
    "VISIBLE_MIN",
    "WAVELENGTHS",
    "WavelengthGrid",
    "add",
    "cosine_similarity",
    "hadamard",
    "resample",
    "resample_values",
    "scale",
    "total_variation",
    "validate_values",
    "zero_outside_visible",
]
