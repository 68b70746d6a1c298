from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from hadacodec import HadacodecError
from spectral import SpectralCurve

from .cmf import Y_MAX, cmf_table, rgb_matrices

LAB_DELTA = 6.0 / 29.0

# CIE94 graphic-arts constants
K1 = 0.045
K2 = 0.015


class ColorDomainError(HadacodecError, ValueError):
    pass


class ColorSpace(str, Enum):
    xyz = "XYZ"
    linear_rgb = "LinearRGB"
    srgb8 = "sRGB8"
    lab = "Lab"


@dataclass(frozen=True)
class ColorTriple:
    space: ColorSpace
    c: tuple[float, float, float]

    def __post_init__(self):
        c = tuple(float(v) for v in self.c)
        if len(c) != 3:
            raise ColorDomainError(f"colour triples have 3 components, got {len(c)}")
        if self.space == ColorSpace.srgb8 and not all(0 <= v <= 255 for v in c):
            raise ColorDomainError("sRGB8 components must lie in [0, 255]")
        object.__setattr__(self, "c", c)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.c, dtype=dtype)


ArrayOrCurve = Union[SpectralCurve, np.ndarray]
ArrayOrTriple = Union[ColorTriple, np.ndarray]


def _values(x) -> np.ndarray:
    if isinstance(x, SpectralCurve):
        return x.values
    return np.asarray(x, dtype=np.float64)


def spectrum_to_xyz(s: ArrayOrCurve) -> np.ndarray:
    """Radiance convention: XYZ = T_cmf . s . step, for (n,) or (..., n)."""
    return _values(s) @ cmf_table().radiance_matrix.T


def xyz_of_reflectance(r: ArrayOrCurve) -> np.ndarray:
    """Tristimulus values of a reflectance under D65, Y = 100 for a perfect white."""
    return _values(r) @ cmf_table().w_xyz.T


def xyz_to_linear_rgb(xyz: ArrayOrTriple) -> np.ndarray:
    """XYZ with white Y = 1 to linear sRGB; out-of-gamut values are kept."""
    _, to_rgb = rgb_matrices()
    return _values(xyz) @ to_rgb.T


def linear_rgb_to_xyz(rgb: ArrayOrTriple) -> np.ndarray:
    to_xyz, _ = rgb_matrices()
    return _values(rgb) @ to_xyz.T


def rgb_of_reflectance(r: ArrayOrCurve) -> np.ndarray:
    return xyz_to_linear_rgb(xyz_of_reflectance(r) / Y_MAX)


def rgb_of_radiance(s: ArrayOrCurve) -> np.ndarray:
    return xyz_to_linear_rgb(spectrum_to_xyz(s))


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(
        t > LAB_DELTA**3,
        np.cbrt(np.maximum(t, LAB_DELTA**3)),
        t / (3 * LAB_DELTA**2) + 4.0 / 29.0,
    )


def _lab_f_prime(t: np.ndarray) -> np.ndarray:
    safe = np.maximum(t, LAB_DELTA**3)
    return np.where(t > LAB_DELTA**3, 1.0 / (3.0 * np.cbrt(safe) ** 2), 1.0 / (3 * LAB_DELTA**2))


def _check_white(white: np.ndarray) -> np.ndarray:
    white = np.asarray(white, dtype=np.float64)
    if white.shape[-1] != 3 or np.any(white <= 0):
        raise ColorDomainError("white point components must be strictly positive")
    return white


def xyz_to_lab(xyz: ArrayOrTriple, white: ArrayOrTriple | None = None) -> np.ndarray:
    """CIE 1976 L*a*b*; `white` defaults to the reflectance-convention D65 white."""
    white = _check_white(cmf_table().white_xyz if white is None else _values(white))
    f = _lab_f(_values(xyz) / white)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    return np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)


def xyz_to_lab_jacobian(xyz: np.ndarray, white: np.ndarray | None = None) -> np.ndarray:
    """d Lab / d XYZ, shape (..., 3, 3)."""
    white = _check_white(cmf_table().white_xyz if white is None else white)
    d = _lab_f_prime(np.asarray(xyz) / white) / white
    jac = np.zeros(d.shape[:-1] + (3, 3))
    jac[..., 0, 1] = 116.0 * d[..., 1]
    jac[..., 1, 0] = 500.0 * d[..., 0]
    jac[..., 1, 1] = -500.0 * d[..., 1]
    jac[..., 2, 1] = 200.0 * d[..., 1]
    jac[..., 2, 2] = -200.0 * d[..., 2]
    return jac


def delta_e76(a: ArrayOrTriple, b: ArrayOrTriple) -> np.ndarray:
    return np.linalg.norm(_values(a) - _values(b), axis=-1)


def delta_e94(reference: ArrayOrTriple, sample: ArrayOrTriple) -> np.ndarray:
    """CIE94 (graphic arts); the first argument is the reference colour."""
    ref, smp = _values(reference), _values(sample)
    dl = ref[..., 0] - smp[..., 0]
    c1 = np.hypot(ref[..., 1], ref[..., 2])
    c2 = np.hypot(smp[..., 1], smp[..., 2])
    dc = c1 - c2
    da = ref[..., 1] - smp[..., 1]
    db = ref[..., 2] - smp[..., 2]
    dh2 = np.maximum(da**2 + db**2 - dc**2, 0.0)
    sc = 1.0 + K1 * c1
    sh = 1.0 + K2 * c1
    return np.sqrt(dl**2 + (dc / sc) ** 2 + dh2 / sh**2)


def srgb_encode(linear: np.ndarray) -> np.ndarray:
    linear = np.clip(np.asarray(linear, dtype=np.float64), 0.0, 1.0)
    return np.where(
        linear <= 0.0031308, 12.92 * linear, 1.055 * np.power(linear, 1.0 / 2.4) - 0.055
    )


def srgb_decode(encoded: np.ndarray) -> np.ndarray:
    encoded = np.asarray(encoded, dtype=np.float64)
    return np.where(encoded <= 0.04045, encoded / 12.92, ((encoded + 0.055) / 1.055) ** 2.4)


def xy_of_xyz(xyz: np.ndarray) -> np.ndarray:
    xyz = np.asarray(xyz, dtype=np.float64)
    total = np.sum(xyz, axis=-1, keepdims=True)
    total = np.where(total == 0, 1.0, total)
    return xyz[..., :2] / total


def xyz_of_xy(x: float, y: float, big_y: float) -> np.ndarray:
    if y <= 0:
        raise ColorDomainError(f"chromaticity y must be positive, got {y}")
    return np.array([x / y * big_y, big_y, (1.0 - x - y) / y * big_y])
