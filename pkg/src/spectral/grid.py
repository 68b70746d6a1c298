import numpy as np

N_SAMPLES = 47
LAMBDA_MIN = 368.0
LAMBDA_MAX = 830.0
STEP = (LAMBDA_MAX - LAMBDA_MIN) / (N_SAMPLES - 1)

VISIBLE_MIN = 400.0
VISIBLE_MAX = 700.0


class WavelengthGrid:
    """The canonical sampling grid shared by every spectral curve."""

    n = N_SAMPLES
    lambda_min = LAMBDA_MIN
    lambda_max = LAMBDA_MAX
    step = STEP

    def __init__(self):
        raise TypeError("WavelengthGrid is a process-wide constant")

    @staticmethod
    def wavelengths() -> np.ndarray:
        # endpoints inclusive
        return _WAVELENGTHS.copy()

    @staticmethod
    def visible_mask() -> np.ndarray:
        return (_WAVELENGTHS >= VISIBLE_MIN - 1e-9) & (_WAVELENGTHS <= VISIBLE_MAX + 1e-9)


_WAVELENGTHS = np.linspace(LAMBDA_MIN, LAMBDA_MAX, N_SAMPLES)
_WAVELENGTHS.setflags(write=False)

WAVELENGTHS = _WAVELENGTHS
