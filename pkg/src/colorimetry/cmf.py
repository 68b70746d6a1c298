from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import pandas as pd

from spectral import STEP, WAVELENGTHS

from .tables import CIE_1931_2DEG, D65_SPD

Y_MAX = 100.0

# sRGB / Rec. 709 primaries
SRGB_PRIMARIES_XY = np.array([[0.64, 0.33], [0.30, 0.60], [0.15, 0.06]])


@dataclass(frozen=True)
class CmfTable:
    """
    Colour matching data resampled to the canonical grid.

    `t_cmf` follows the radiance convention (XYZ = t_cmf @ s * step); the `w_*`
    rows are D65-weighted and normalised so a unit reflectance has Y = Y_MAX.
    """

    t_cmf: np.ndarray  # (3, n)
    d65: np.ndarray  # (n,)
    w_xyz: np.ndarray  # (3, n) rows w_X, w_Y, w_Z
    step: float

    @property
    def w_x(self) -> np.ndarray:
        return self.w_xyz[0]

    @property
    def w_y(self) -> np.ndarray:
        return self.w_xyz[1]

    @property
    def w_z(self) -> np.ndarray:
        return self.w_xyz[2]

    @property
    def white_xyz(self) -> np.ndarray:
        """D65 white of the reflectance convention (Y = 100)."""
        return self.w_xyz.sum(axis=1)

    @property
    def radiance_matrix(self) -> np.ndarray:
        return self.t_cmf * self.step

    @property
    def loss_matrix(self) -> np.ndarray:
        """Radiance projection scaled so an equal-energy unit spectrum has Y = 1."""
        m = self.radiance_matrix
        return m / m[1].sum()

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "wavelength": WAVELENGTHS,
                "x_bar": self.t_cmf[0],
                "y_bar": self.t_cmf[1],
                "z_bar": self.t_cmf[2],
                "d65": self.d65,
                "w_X": self.w_xyz[0],
                "w_Y": self.w_xyz[1],
                "w_Z": self.w_xyz[2],
            }
        )


@lru_cache(maxsize=1)
def cmf_table() -> CmfTable:
    wl = CIE_1931_2DEG[:, 0]
    # observer is zero outside its tabulated range
    t_cmf = np.stack(
        [np.interp(WAVELENGTHS, wl, CIE_1931_2DEG[:, c], left=0.0, right=0.0) for c in (1, 2, 3)]
    )
    # D65 holds its end value past 780 nm, where the observer is zero anyway
    d65 = np.interp(WAVELENGTHS, D65_SPD[:, 0], D65_SPD[:, 1])

    weighted = t_cmf * d65 * STEP
    w_xyz = weighted * (Y_MAX / weighted[1].sum())

    for arr in (t_cmf, d65, w_xyz):
        arr.setflags(write=False)
    return CmfTable(t_cmf=t_cmf, d65=d65, w_xyz=w_xyz, step=STEP)


def _primaries_matrix(white_xyz: np.ndarray) -> np.ndarray:
    xy = SRGB_PRIMARIES_XY
    p = np.stack([xy[:, 0] / xy[:, 1], np.ones(3), (1 - xy[:, 0] - xy[:, 1]) / xy[:, 1]])
    s = np.linalg.solve(p, white_xyz / white_xyz[1])
    return p * s


@lru_cache(maxsize=1)
def rgb_matrices() -> tuple[np.ndarray, np.ndarray]:
    """(linear sRGB -> XYZ, XYZ -> linear sRGB) for XYZ with white Y = 1."""
    to_xyz = _primaries_matrix(cmf_table().white_xyz)
    to_rgb = np.linalg.inv(to_xyz)
    to_xyz.setflags(write=False)
    to_rgb.setflags(write=False)
    return to_xyz, to_rgb


def dump_cmf() -> pd.DataFrame:
    return cmf_table().to_frame()
