import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spectral import (
    N_SAMPLES,
    STEP,
    WAVELENGTHS,
    Role,
    SpectralCurve,
    SpectralDomainError,
    SpectralFormatError,
    add,
    cosine_similarity,
    hadamard,
    resample,
    scale,
)

CURVE_VALUES = arrays(
    np.float64, (N_SAMPLES,), elements=st.floats(min_value=0.0, max_value=10.0, allow_subnormal=False)
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_curve(rng, role=Role.radiance):
    return SpectralCurve(rng.random(N_SAMPLES), role)


def test_grid_is_inclusive():
    assert WAVELENGTHS.size == 47
    assert WAVELENGTHS[0] == 368.0
    assert WAVELENGTHS[-1] == 830.0
    assert STEP == pytest.approx(462.0 / 46.0)
    np.testing.assert_allclose(np.diff(WAVELENGTHS), STEP)


def test_curve_validation():
    with pytest.raises(SpectralDomainError):
        SpectralCurve(np.full(N_SAMPLES, -0.1))
    with pytest.raises(SpectralDomainError):
        SpectralCurve(np.full(N_SAMPLES, np.nan))
    with pytest.raises(SpectralDomainError):
        SpectralCurve.flat(1.1, Role.reflectance)
    with pytest.raises(SpectralFormatError):
        SpectralCurve(np.ones(10))
    # tolerance on the reflectance bound
    SpectralCurve.flat(1.0 + 1e-10, Role.reflectance)


def test_scale(rng):
    s = random_curve(rng)
    assert np.all(scale(s, 0).values == 0)
    assert scale(s, 1) is s
    np.testing.assert_array_equal(scale(SpectralCurve.flat(0.5), 2).values, np.ones(N_SAMPLES))
    with pytest.raises(SpectralDomainError):
        scale(s, -1.0)


def test_add(rng):
    s1, s2 = random_curve(rng), random_curve(rng)
    np.testing.assert_array_equal(add(s1, SpectralCurve.zero()).values, s1.values)
    np.testing.assert_allclose(
        add(SpectralCurve.flat(0.3), SpectralCurve.flat(0.2)).values, 0.5, rtol=1e-15
    )
    np.testing.assert_array_equal(add(s1, s2).values, add(s2, s1).values)


def test_hadamard(rng):
    s = random_curve(rng)
    np.testing.assert_array_equal(hadamard(s, SpectralCurve.flat(1.0)).values, s.values)
    assert np.all(hadamard(s, SpectralCurve.zero()).values == 0)
    out = hadamard(SpectralCurve.flat(0.5, Role.reflectance), SpectralCurve.flat(2.0, Role.illumination))
    np.testing.assert_array_equal(out.values, np.ones(N_SAMPLES))
    assert out.role == Role.radiance


@seed(5)
@given(a=CURVE_VALUES, b=CURVE_VALUES, c=CURVE_VALUES)
def test_algebra_properties(a, b, c):
    a, b, c = (SpectralCurve(v, Role.radiance) for v in (a, b, c))
    np.testing.assert_allclose(add(add(a, b), c).values, add(a, add(b, c)).values, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(
        hadamard(hadamard(a, b), c).values, hadamard(a, hadamard(b, c)).values, rtol=1e-12, atol=1e-12
    )
    np.testing.assert_array_equal(hadamard(a, b).values, hadamard(b, a).values)
    lhs = hadamard(a, add(b, c)).values
    rhs = add(hadamard(a, b), hadamard(a, c)).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12
    assert np.all(hadamard(a, b).values >= 0) and np.all(add(a, b).values >= 0)


def test_resample_identity_on_canonical_grid(rng):
    values = rng.random(N_SAMPLES)
    out = resample(values, WAVELENGTHS)
    np.testing.assert_array_equal(out.values, values)
    again = resample(out.values, WAVELENGTHS)
    np.testing.assert_array_equal(again.values, out.values)


def test_resample_constant_with_zeroing():
    src = np.arange(380.0, 781.0, 5.0)
    out = resample(np.full(src.size, 0.4), src, zero_outside=True).values
    inside = (WAVELENGTHS >= 400) & (WAVELENGTHS <= 700)
    np.testing.assert_allclose(out[inside], 0.4)
    assert np.all(out[~inside] == 0)


def test_resample_interpolates_between_samples():
    src = np.arange(380.0, 781.0, 10.0)
    values = np.linspace(0.0, 1.0, src.size) ** 2
    out = resample(values, src).values
    # 550.0 is not a grid wavelength; check the grid sample bracketed by 550 and 560
    idx = int(np.argmin(np.abs(WAVELENGTHS - 555.0)))
    wl = WAVELENGTHS[idx]
    lo = int(np.floor((wl - 380.0) / 10.0))
    t = (wl - src[lo]) / 10.0
    expected = (1 - t) * values[lo] + t * values[lo + 1]
    assert out[idx] == pytest.approx(expected, rel=1e-12)
    # clamps beyond the source range
    assert out[0] == values[0]
    assert out[-1] == values[-1]


def test_resample_rejects_non_monotone_grid():
    with pytest.raises(SpectralFormatError):
        resample(np.ones(3), np.array([400.0, 500.0, 450.0]))
    with pytest.raises(SpectralFormatError):
        resample(np.ones(1), np.array([400.0]))


def test_cosine_zero_vector():
    assert cosine_similarity(np.zeros(5), np.ones(5)) == 0.0
    assert cosine_similarity(np.ones(5), 3 * np.ones(5)) == pytest.approx(1.0)
