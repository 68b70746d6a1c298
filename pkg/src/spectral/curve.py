from dataclasses import dataclass
from enum import Enum

import numpy as np

from hadacodec import HadacodecError

from .grid import N_SAMPLES, WAVELENGTHS, WavelengthGrid

REFLECTANCE_TOLERANCE = 1e-9
COSINE_EPS = 1e-12


class SpectralDomainError(HadacodecError, ValueError):
    """A spectral value lies outside the domain of an operation."""

    pass


class SpectralFormatError(HadacodecError, ValueError):
    """Input samples cannot be interpreted as a spectrum."""

    pass


class Role(str, Enum):
    reflectance = "reflectance"
    illumination = "illumination"
    radiance = "radiance"


@dataclass(frozen=True)
class SpectralCurve:
    values: np.ndarray
    role: Role = Role.radiance

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (N_SAMPLES,):
            raise SpectralFormatError(
                f"expected {N_SAMPLES} samples, got shape {values.shape}"
            )
        validate_values(values, self.role)
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def flat(cls, value: float, role: Role = Role.radiance) -> "SpectralCurve":
        return cls(np.full(N_SAMPLES, float(value)), role)

    @classmethod
    def zero(cls, role: Role = Role.radiance) -> "SpectralCurve":
        return cls.flat(0.0, role)

    def with_role(self, role: Role) -> "SpectralCurve":
        return SpectralCurve(self.values, role)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def validate_values(values: np.ndarray, role: Role = Role.radiance) -> None:
    if not np.all(np.isfinite(values)):
        raise SpectralDomainError("spectral values must be finite")
    if np.any(values < 0):
        raise SpectralDomainError("spectral values must be non-negative")
    if role == Role.reflectance and np.any(values > 1.0 + REFLECTANCE_TOLERANCE):
        raise SpectralDomainError("reflectance values must not exceed 1")


def _product_role(a: Role, b: Role) -> Role:
    if a == b == Role.reflectance:
        return Role.reflectance
    return Role.radiance


def scale(s: SpectralCurve, alpha: float) -> SpectralCurve:
    if not np.isfinite(alpha) or alpha < 0:
        raise SpectralDomainError(f"scale factor must be a non-negative real, got {alpha}")
    if alpha == 1:
        return s
    role = Role.radiance if s.role == Role.reflectance and alpha > 1 else s.role
    return SpectralCurve(alpha * s.values, role)


def add(s1: SpectralCurve, s2: SpectralCurve) -> SpectralCurve:
    role = s1.role if s1.role == s2.role and s1.role != Role.reflectance else Role.radiance
    return SpectralCurve(s1.values + s2.values, role)


def hadamard(s1: SpectralCurve, s2: SpectralCurve) -> SpectralCurve:
    return SpectralCurve(s1.values * s2.values, _product_role(s1.role, s2.role))


def zero_outside_visible(values: np.ndarray) -> np.ndarray:
    """Zero every grid sample outside 400-700 nm; works on (n,) and (m, n)."""
    out = np.array(values, dtype=np.float64, copy=True)
    out[..., ~WavelengthGrid.visible_mask()] = 0.0
    return out


def resample(
    values: np.ndarray,
    src_grid: np.ndarray,
    zero_outside: bool = False,
    role: Role = Role.radiance,
) -> SpectralCurve:
    """
    Linear interpolation onto the canonical grid.

    Wavelengths beyond the source range take the nearest endpoint value.
    """
    return SpectralCurve(resample_values(values, src_grid, zero_outside), role)


def resample_values(
    values: np.ndarray, src_grid: np.ndarray, zero_outside: bool = False
) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    src_grid = np.asarray(src_grid, dtype=np.float64)
    if src_grid.ndim != 1 or src_grid.size < 2:
        raise SpectralFormatError("source grid needs at least two wavelengths")
    if values.shape[-1] != src_grid.size:
        raise SpectralFormatError(
            f"{values.shape[-1]} values for {src_grid.size} source wavelengths"
        )
    steps = np.diff(src_grid)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0)) + 1
        raise SpectralFormatError(
            f"source wavelengths must be strictly increasing (position {bad})"
        )

    if values.ndim == 1:
        out = np.interp(WAVELENGTHS, src_grid, values)
    else:
        out = np.stack([np.interp(WAVELENGTHS, src_grid, row) for row in values])
    if zero_outside:
        out = zero_outside_visible(out)
    return out


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise cosine; zero vectors have similarity 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na = np.maximum(np.linalg.norm(a, axis=-1), COSINE_EPS)
    nb = np.maximum(np.linalg.norm(b, axis=-1), COSINE_EPS)
    return np.sum(a * b, axis=-1) / (na * nb)


def total_variation(values: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(np.diff(np.asarray(values, dtype=np.float64), axis=-1)), axis=-1)
