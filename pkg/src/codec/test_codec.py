import time

import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from codec import (
    CodecDomainError,
    CodecWeights,
    blockwise_hadamard,
    decode,
    effective_weights,
    encode,
    homomorphism_gap,
    join_blocks,
    reconstruction_report,
    softplus,
    split_blocks,
)
from spectral import N_SAMPLES, SpectralCurve

SPECTRA = arrays(
    np.float64, (N_SAMPLES,), elements=st.floats(min_value=0.0, max_value=1.0, allow_subnormal=False)
)
# hypothesis does not mix with function-scoped fixtures
PROPERTY_WEIGHTS = CodecWeights.initialize(6, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def weights():
    return CodecWeights.initialize(6, seed=3)


def test_softplus_regimes():
    assert softplus(np.array(0.0)) == pytest.approx(np.log(2) / 10, rel=1e-15)
    assert softplus(np.array(-100.0)) <= 1e-40
    assert softplus(np.array(5.0)) == pytest.approx(5.0, abs=1e-12)
    big = softplus(np.array([1e6, 3.0 + 1e-9]))
    assert np.all(np.isfinite(big))
    assert big[0] == 1e6


def test_effective_weights_non_negative(weights):
    w_enc, w_dec = effective_weights(weights)
    assert w_enc.shape == (6, N_SAMPLES)
    assert w_dec.shape == (N_SAMPLES, 6)
    assert np.all(w_enc >= 0) and np.all(w_dec >= 0)
    with pytest.raises(ValueError):
        w_enc[0, 0] = 1.0


def test_weights_validation():
    with pytest.raises(CodecDomainError):
        CodecWeights(np.zeros((4, N_SAMPLES)), np.zeros((N_SAMPLES, 4)))
    with pytest.raises(CodecDomainError):
        CodecWeights(np.zeros((6, N_SAMPLES)), np.zeros((N_SAMPLES, 3)))
    with pytest.raises(CodecDomainError):
        CodecWeights(np.full((3, N_SAMPLES), np.nan), np.zeros((N_SAMPLES, 3)))
    with pytest.raises(CodecDomainError):
        CodecWeights(np.zeros((3, N_SAMPLES)), np.zeros((N_SAMPLES, 3)), beta=0.0)


def test_initialize_deterministic():
    a = CodecWeights.initialize(9, seed=11)
    b = CodecWeights.initialize(9, seed=11)
    np.testing.assert_array_equal(a.raw_enc, b.raw_enc)
    np.testing.assert_array_equal(a.raw_dec, b.raw_dec)
    assert np.max(np.abs(a.raw_enc)) <= 0.5 / np.sqrt(N_SAMPLES)
    assert np.max(np.abs(a.raw_dec)) <= 0.5 / np.sqrt(9)
    assert a.blocks == 3


def test_encode_linearity(weights, rng):
    np.testing.assert_array_equal(encode(weights, SpectralCurve.zero()), np.zeros(6))
    np.testing.assert_allclose(encode(weights, SpectralCurve.flat(1.0)), weights.w_enc.sum(axis=1))
    s1, s2 = rng.random((2, 10_000, N_SAMPLES))
    alpha = rng.uniform(0, 10, (10_000, 1))
    start = time.perf_counter()
    lhs = encode(weights, alpha * s1 + s2)
    rhs = alpha * encode(weights, s1) + encode(weights, s2)
    assert time.perf_counter() - start < 5.0
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


@seed(3)
@given(s1=SPECTRA, s2=SPECTRA, alpha=st.floats(min_value=0.0, max_value=10.0))
def test_encode_is_linear_for_any_spectra(s1, s2, alpha):
    np.testing.assert_allclose(
        encode(PROPERTY_WEIGHTS, alpha * s1 + s2),
        alpha * encode(PROPERTY_WEIGHTS, s1) + encode(PROPERTY_WEIGHTS, s2),
        rtol=1e-12,
        atol=1e-12,
    )


def test_encode_batch_matches_single(weights, rng):
    batch = rng.random((5, N_SAMPLES))
    codes = encode(weights, batch)
    assert codes.shape == (5, 6)
    np.testing.assert_allclose(codes[2], encode(weights, batch[2]), rtol=1e-14)


def test_decode(weights):
    np.testing.assert_array_equal(decode(weights, np.zeros(6)), np.zeros(N_SAMPLES))
    for i in range(6):
        e = np.zeros(6)
        e[i] = 1.0
        np.testing.assert_array_equal(decode(weights, e), weights.w_dec[:, i])
    with pytest.raises(CodecDomainError):
        decode(weights, np.array([0.1, 0.2, -1e-9, 0.0, 0.0, 0.0]))
    with pytest.raises(CodecDomainError):
        decode(weights, np.zeros(9))


def test_blockwise_hadamard_algebra(rng):
    z1, z2, z3 = rng.random((3, 6))
    np.testing.assert_array_equal(blockwise_hadamard(z1, np.ones(6)), z1)
    np.testing.assert_array_equal(blockwise_hadamard(z1, np.zeros(6)), np.zeros(6))
    np.testing.assert_allclose(blockwise_hadamard(z1, z2), blockwise_hadamard(z2, z1), rtol=1e-12)
    np.testing.assert_allclose(
        blockwise_hadamard(blockwise_hadamard(z1, z2), z3),
        blockwise_hadamard(z1, blockwise_hadamard(z2, z3)),
        rtol=1e-12,
    )
    # block by block
    joined = join_blocks([a * b for a, b in zip(split_blocks(z1), split_blocks(z2))])
    np.testing.assert_array_equal(joined, blockwise_hadamard(z1, z2))
    with pytest.raises(CodecDomainError):
        blockwise_hadamard(z1, np.ones(9))


def test_split_join_blocks(rng):
    z = np.arange(6.0)
    blocks = split_blocks(z)
    assert [b.tolist() for b in blocks] == [[0, 1, 2], [3, 4, 5]]
    assert len(split_blocks(rng.random(9))) == 3
    np.testing.assert_array_equal(join_blocks(blocks), z)
    with pytest.raises(CodecDomainError):
        split_blocks(np.zeros(5))
    with pytest.raises(CodecDomainError):
        join_blocks([np.zeros(2)])


@seed(4)
@given(s1=SPECTRA, s2=SPECTRA)
def test_non_negativity_closure(s1, s2):
    codes = encode(PROPERTY_WEIGHTS, np.stack([s1, s2]))
    assert np.all(codes >= 0)
    assert np.all(decode(PROPERTY_WEIGHTS, codes) >= 0)
    assert np.all(blockwise_hadamard(codes[0], codes[1]) >= 0)
    assert np.all(decode(PROPERTY_WEIGHTS, blockwise_hadamard(codes[0], codes[1])) >= 0)


def test_product_is_not_exact_below_full_rank(weights, rng):
    r = rng.random((10_000, N_SAMPLES))
    lights = rng.random((10_000, N_SAMPLES))
    gaps = homomorphism_gap(weights, r, lights)
    assert gaps.shape == (10_000,)
    assert np.max(gaps) > 1e-3


def test_reconstruction_report(weights, rng):
    report = reconstruction_report(weights, rng.random((8, N_SAMPLES)))
    assert set(report) == {"rmse_mean", "rmse_max", "delta_e76_mean", "delta_e76_max"}
    assert 0 <= report["rmse_mean"] <= report["rmse_max"]
    assert np.isfinite(report["delta_e76_max"])
