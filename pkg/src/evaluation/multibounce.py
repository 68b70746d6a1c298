import logging
from dataclasses import asdict, dataclass

import numpy as np
import pandas as pd

from codec import CodecWeights, blockwise_hadamard, decode, encode
from colorimetry import Y_MAX, cmf_table, delta_e94, spectrum_to_xyz, xyz_to_lab
from hadacodec import HadacodecError
from utils.seeding import stream

logger = logging.getLogger(__name__)

DARK_Y = 1e-12


class EvaluationError(HadacodecError, ValueError):
    pass


@dataclass(frozen=True)
class BounceChainResult:
    bounce: int
    mean: float
    median: float
    p95: float
    max: float
    pair_count: int
    skipped: int = 0


def results_frame(results: list[BounceChainResult]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in results])


def spectral_chain(illumination: np.ndarray, reflectances: np.ndarray) -> list[np.ndarray]:
    """S(b) = R(b) * S(b-1), S(0) = L; reflectances has shape (pairs, bounces, n)."""
    chain = []
    s = illumination
    for b in range(reflectances.shape[1]):
        s = reflectances[:, b] * s
        chain.append(s)
    return chain


def latent_chain(
    weights: CodecWeights, illumination: np.ndarray, reflectances: np.ndarray
) -> list[np.ndarray]:
    """z(b) = encode(R(b)) (.)_B z(b-1), z(0) = encode(L)."""
    chain = []
    z = encode(weights, illumination)
    for b in range(reflectances.shape[1]):
        z = blockwise_hadamard(encode(weights, reflectances[:, b]), z)
        chain.append(z)
    return chain


def normalized_lab(xyz: np.ndarray, y_ref: np.ndarray) -> np.ndarray:
    """Lab of radiance XYZ with the reference luminance mapped to the D65 white."""
    return xyz_to_lab(xyz * (Y_MAX / y_ref)[:, None], cmf_table().white_xyz)


def multibounce_eval(
    weights: CodecWeights,
    reflectance: np.ndarray,
    illumination: np.ndarray,
    bounces: int = 3,
    pairs: int = 500,
    seed: int = 0,
) -> list[BounceChainResult]:
    """
    Compare latent and spectral multi-bounce chains with ΔE94.

    Illuminants and the per-bounce reflectances are drawn with replacement.
    Both chains are scaled by the ground-truth luminance before Lab; pairs whose
    ground-truth chain is black are skipped.
    """
    reflectance = np.atleast_2d(np.asarray(reflectance, dtype=np.float64))
    illumination = np.atleast_2d(np.asarray(illumination, dtype=np.float64))
    if reflectance.size == 0 or illumination.size == 0:
        raise EvaluationError("multi-bounce evaluation needs non-empty test splits")
    if bounces < 1 or pairs < 1:
        raise EvaluationError("bounces and pairs must be positive")

    rng = stream(seed, "multibounce-pairs")
    l_idx = rng.integers(0, len(illumination), pairs)
    r_idx = rng.integers(0, len(reflectance), (pairs, bounces))
    lights = illumination[l_idx]
    refl = reflectance[r_idx]

    results = []
    for b, (s, z) in enumerate(
        zip(spectral_chain(lights, refl), latent_chain(weights, lights, refl)), start=1
    ):
        xyz_gt = spectrum_to_xyz(s)
        xyz_latent = spectrum_to_xyz(decode(weights, z))
        lit = xyz_gt[:, 1] > DARK_Y
        skipped = int(np.sum(~lit))
        if skipped:
            logger.warning(f"bounce {b}: skipping {skipped} pairs with black ground truth")
        if not np.any(lit):
            raise EvaluationError(f"every ground-truth chain is black at bounce {b}")
        y_ref = xyz_gt[lit, 1]
        de = delta_e94(normalized_lab(xyz_gt[lit], y_ref), normalized_lab(xyz_latent[lit], y_ref))
        results.append(
            BounceChainResult(
                bounce=b,
                mean=float(np.mean(de)),
                median=float(np.median(de)),
                p95=float(np.percentile(de, 95)),
                max=float(np.max(de)),
                pair_count=int(np.sum(lit)),
                skipped=skipped,
            )
        )
        logger.info(f"bounce {b}: mean ΔE94 {results[-1].mean:.4f} over {results[-1].pair_count} pairs")
    return results
