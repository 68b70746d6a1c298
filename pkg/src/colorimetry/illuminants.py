import numpy as np

from spectral import WAVELENGTHS

from .convert import ColorDomainError
from .tables import DAYLIGHT_BASIS

PLANCK_C1 = 3.741771852e-16  # W m^2
PLANCK_C2 = 1.4388e-2  # m K


def blackbody_spd(cct: float, wavelengths: np.ndarray = WAVELENGTHS) -> np.ndarray:
    """Planck's law on `wavelengths` (nm), in W m^-3 sr-free units."""
    if cct <= 0:
        raise ColorDomainError(f"colour temperature must be positive, got {cct}")
    lam = np.asarray(wavelengths, dtype=np.float64) * 1e-9
    return PLANCK_C1 / (lam**5 * np.expm1(PLANCK_C2 / (lam * cct)))


def daylight_chromaticity(cct: float) -> tuple[float, float]:
    """Chromaticity on the CIE daylight locus, valid for 4000-25000 K."""
    if cct < 4000 or cct > 25000:
        raise ColorDomainError(f"daylight CCT {cct} K outside [4000, 25000]")
    if cct <= 7000:
        x = -4.6070e9 / cct**3 + 2.9678e6 / cct**2 + 0.09911e3 / cct + 0.244063
    else:
        x = -2.0064e9 / cct**3 + 1.9018e6 / cct**2 + 0.24748e3 / cct + 0.237040
    y = -3.000 * x**2 + 2.870 * x - 0.275
    return x, y


def daylight_spd(cct: float, wavelengths: np.ndarray = WAVELENGTHS) -> np.ndarray:
    """CIE daylight from the S0 + M1 S1 + M2 S2 basis."""
    x, y = daylight_chromaticity(cct)
    denominator = 0.0241 + 0.2562 * x - 0.7341 * y
    m1 = (-1.3515 - 1.7703 * x + 5.9114 * y) / denominator
    m2 = (0.0300 - 31.4424 * x + 30.0717 * y) / denominator
    wl = DAYLIGHT_BASIS[:, 0]
    basis = DAYLIGHT_BASIS[:, 1] + m1 * DAYLIGHT_BASIS[:, 2] + m2 * DAYLIGHT_BASIS[:, 3]
    return np.maximum(np.interp(wavelengths, wl, basis), 0.0)
