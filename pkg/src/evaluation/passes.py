from dataclasses import dataclass
from typing import Optional

from spectral import N_SAMPLES

from .multibounce import EvaluationError


@dataclass(frozen=True)
class PassCountReport:
    n: int
    k: int
    passes: int
    ratio: float
    measured_ratio: Optional[float] = None


def pass_count_report(
    n: int = N_SAMPLES,
    k: int = 6,
    spectral_evaluations: Optional[int] = None,
    latent_evaluations: Optional[int] = None,
) -> PassCountReport:
    """Render-pass reduction n / (k/3), plus the ratio of measured shading counters when given."""
    if k <= 0 or k % 3 != 0:
        raise EvaluationError(f"latent size must be a positive multiple of 3, got {k}")
    passes = k // 3
    measured = None
    if spectral_evaluations is not None and latent_evaluations:
        measured = spectral_evaluations / latent_evaluations
    return PassCountReport(n=n, k=k, passes=passes, ratio=n / passes, measured_ratio=measured)
