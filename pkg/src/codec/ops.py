from typing import Union

import numpy as np

from colorimetry import delta_e76, xyz_of_reflectance, xyz_to_lab
from spectral import SpectralCurve

from .weights import CodecDomainError, CodecWeights

ArrayOrCurve = Union[SpectralCurve, np.ndarray]


def _spectra(s: ArrayOrCurve, n: int) -> np.ndarray:
    values = s.values if isinstance(s, SpectralCurve) else np.asarray(s, dtype=np.float64)
    if values.shape[-1] != n:
        raise CodecDomainError(f"expected {n} spectral samples, got {values.shape[-1]}")
    return values


def encode(w: CodecWeights, s: ArrayOrCurve) -> np.ndarray:
    """z = W_enc s, for a single spectrum (n,) or a batch (m, n)."""
    return _spectra(s, w.n) @ w.w_enc.T


def decode(w: CodecWeights, z: np.ndarray) -> np.ndarray:
    """s = W_dec z; codes must lie in the non-negative cone."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != w.k:
        raise CodecDomainError(f"expected codes of length {w.k}, got {z.shape[-1]}")
    if np.any(z < 0):
        raise CodecDomainError("latent codes must be non-negative")
    return z @ w.w_dec.T


def decode_curve(w: CodecWeights, z: np.ndarray) -> SpectralCurve:
    return SpectralCurve(decode(w, z))


def blockwise_hadamard(z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """
    Product of codes block by block.

    Each 3-channel block multiplies element-wise, so the result is the plain
    element-wise product of the full codes.
    """
    z1 = np.asarray(z1, dtype=np.float64)
    z2 = np.asarray(z2, dtype=np.float64)
    if z1.shape[-1] != z2.shape[-1]:
        raise CodecDomainError(f"code lengths differ: {z1.shape[-1]} vs {z2.shape[-1]}")
    return z1 * z2


def split_blocks(z: np.ndarray) -> list[np.ndarray]:
    z = np.asarray(z)
    if z.shape[-1] % 3 != 0:
        raise CodecDomainError(f"code length {z.shape[-1]} is not a multiple of 3")
    return [z[..., 3 * i : 3 * i + 3] for i in range(z.shape[-1] // 3)]


def join_blocks(triplets: list[np.ndarray]) -> np.ndarray:
    if not triplets:
        raise CodecDomainError("no blocks to join")
    for t in triplets:
        if np.shape(t)[-1] != 3:
            raise CodecDomainError(f"blocks hold 3 channels, got {np.shape(t)[-1]}")
    return np.concatenate([np.asarray(t) for t in triplets], axis=-1)


def homomorphism_gap(w: CodecWeights, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Max-norm gap between encode(a*b) and encode(a) (.)_B encode(b), per pair."""
    gap = encode(w, np.asarray(a) * np.asarray(b)) - blockwise_hadamard(encode(w, a), encode(w, b))
    return np.max(np.abs(gap), axis=-1)


def reconstruction_report(w: CodecWeights, reflectances: np.ndarray) -> dict[str, float]:
    """Reconstruction RMSE and D65 colour error of decode(encode(R))."""
    reflectances = np.atleast_2d(reflectances)
    rec = decode(w, encode(w, reflectances))
    rmse = np.sqrt(np.mean((rec - reflectances) ** 2, axis=-1))
    de = delta_e76(xyz_to_lab(xyz_of_reflectance(reflectances)), xyz_to_lab(xyz_of_reflectance(rec)))
    return {
        "rmse_mean": float(np.mean(rmse)),
        "rmse_max": float(np.max(rmse)),
        "delta_e76_mean": float(np.mean(de)),
        "delta_e76_max": float(np.max(de)),
    }
