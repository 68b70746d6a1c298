import numpy as np
import pytest

from codec import CodecWeights
from dataset import SpectralDataset, build_dataset
from models.dataset import DatasetConfig
from models.training import LossWeights, TrainConfig
from spectral import N_SAMPLES, WAVELENGTHS
from training import train

IDENTITY_K = 48


def identity_codec_weights() -> CodecWeights:
    """
    Exact codec on the 47-sample grid: encode pads the spectrum with one zero,
    decode drops it. With beta=100 the softplus is exactly linear at 1 and
    exactly zero at -1000.
    """
    raw_enc = np.full((IDENTITY_K, N_SAMPLES), -1000.0)
    raw_enc[:N_SAMPLES][np.eye(N_SAMPLES, dtype=bool)] = 1.0
    return CodecWeights(raw_enc, raw_enc.T.copy(), beta=100.0)


def smooth_reflectances(rng: np.random.Generator, count: int) -> np.ndarray:
    centers = rng.uniform(420, 680, count)
    widths = rng.uniform(30, 90, count)
    bumps = np.exp(-0.5 * ((WAVELENGTHS[None, :] - centers[:, None]) / widths[:, None]) ** 2)
    return 0.05 + 0.9 * bumps


def smooth_illuminants(rng: np.random.Generator, count: int) -> np.ndarray:
    slopes = rng.uniform(-1, 1, count)
    ramp = 1.0 + slopes[:, None] * (WAVELENGTHS[None, :] - 600.0) / 400.0
    return np.maximum(ramp, 0.05)


@pytest.fixture
def identity_codec() -> CodecWeights:
    return identity_codec_weights()


@pytest.fixture(scope="session")
def reference_dataset() -> SpectralDataset:
    return build_dataset(DatasetConfig(seed=0))


def _trained(dataset: SpectralDataset, k: int) -> CodecWeights:
    weights, _ = train(
        dataset.reflectance_train,
        dataset.illumination_train,
        TrainConfig(k=k, seed=0),
        LossWeights(),
    )
    return weights


@pytest.fixture(scope="session")
def trained_k6(reference_dataset) -> CodecWeights:
    return _trained(reference_dataset, 6)


@pytest.fixture(scope="session")
def trained_k9(reference_dataset) -> CodecWeights:
    return _trained(reference_dataset, 9)
