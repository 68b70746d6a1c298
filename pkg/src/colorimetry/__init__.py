from .cmf import Y_MAX, CmfTable, cmf_table, dump_cmf, rgb_matrices
from .convert import (
    ColorDomainError,
    ColorSpace,
    ColorTriple,
    delta_e76,
    delta_e94,
    linear_rgb_to_xyz,
    rgb_of_radiance,
    rgb_of_reflectance,
    spectrum_to_xyz,
    srgb_decode,
    srgb_encode,
    xy_of_xyz,
    xyz_of_reflectance,
    xyz_of_xy,
    xyz_to_lab,
    xyz_to_lab_jacobian,
    xyz_to_linear_rgb,
)
from .illuminants import blackbody_spd, daylight_chromaticity, daylight_spd

__all__ = [
    "CmfTable",
    "ColorDomainError",
    "ColorSpace",
    "ColorTriple",
    "Y_MAX",
    "blackbody_spd",
    "cmf_table",
    "daylight_chromaticity",
    "daylight_spd",
    "delta_e76",
    "delta_e94",
    "dump_cmf",
    "linear_rgb_to_xyz",
    "rgb_matrices",
    "rgb_of_radiance",
    "rgb_of_reflectance",
    "spectrum_to_xyz",
    "srgb_decode",
    "srgb_encode",
    "xy_of_xyz",
    "xyz_of_reflectance",
    "xyz_of_xy",
    "xyz_to_lab",
    "xyz_to_lab_jacobian",
    "xyz_to_linear_rgb",
]
