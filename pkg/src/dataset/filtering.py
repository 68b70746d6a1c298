import logging

import numpy as np

from spectral import COSINE_EPS

from .types import LabeledSpectrum

logger = logging.getLogger(__name__)


def cosine_dedup(spectra: list[LabeledSpectrum], tau: float = 0.95) -> list[LabeledSpectrum]:
    """Greedy in input order: keep a spectrum iff its cosine to every kept one is below tau."""
    if not spectra:
        return []
    values = np.stack([s.curve.values for s in spectra])
    unit = values / np.maximum(np.linalg.norm(values, axis=1), COSINE_EPS)[:, None]
    kept: list[int] = []
    for i in range(len(spectra)):
        if kept and np.max(unit[kept] @ unit[i]) >= tau:
            continue
        kept.append(i)
    logger.info(f"cosine filter kept {len(kept)} of {len(spectra)} spectra (tau={tau})")
    return [spectra[i] for i in kept]
