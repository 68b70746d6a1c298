import numpy as np
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from colorimetry import (
    ColorDomainError,
    ColorSpace,
    ColorTriple,
    blackbody_spd,
    cmf_table,
    daylight_chromaticity,
    daylight_spd,
    delta_e76,
    delta_e94,
    dump_cmf,
    linear_rgb_to_xyz,
    rgb_of_reflectance,
    spectrum_to_xyz,
    srgb_decode,
    srgb_encode,
    xy_of_xyz,
    xyz_of_reflectance,
    xyz_to_lab,
    xyz_to_lab_jacobian,
    xyz_to_linear_rgb,
)
from colorimetry.tables import CIE_1931_2DEG
from spectral import N_SAMPLES, STEP, WAVELENGTHS, SpectralCurve

SPECTRA = arrays(
    np.float64, (N_SAMPLES,), elements=st.floats(min_value=0.0, max_value=1.0, allow_subnormal=False)
)
LAB = arrays(np.float64, (3,), elements=st.floats(min_value=-100.0, max_value=100.0))


@pytest.fixture
def rng():
    return np.random.default_rng(99)


def test_tables_non_negative():
    table = cmf_table()
    assert np.all(table.t_cmf >= 0)
    assert np.all(table.d65 >= 0)
    assert np.all(table.w_xyz >= 0)
    assert table.w_y.sum() == pytest.approx(100.0, rel=1e-14)


def test_spectrum_to_xyz():
    np.testing.assert_array_equal(spectrum_to_xyz(SpectralCurve.zero()), np.zeros(3))
    equal_energy = np.ones(N_SAMPLES)
    y_bar = np.interp(WAVELENGTHS, CIE_1931_2DEG[:, 0], CIE_1931_2DEG[:, 2], left=0, right=0)
    assert spectrum_to_xyz(equal_energy)[1] == pytest.approx(y_bar.sum() * STEP, rel=1e-12)


@seed(6)
@given(s1=SPECTRA, s2=SPECTRA, alpha=st.floats(min_value=0.0, max_value=10.0))
def test_xyz_linearity(s1, s2, alpha):
    for f in (spectrum_to_xyz, xyz_of_reflectance):
        np.testing.assert_allclose(f(alpha * s1 + s2), alpha * f(s1) + f(s2), rtol=1e-12, atol=1e-12)
    np.testing.assert_array_equal(spectrum_to_xyz(2 * s1), 2 * spectrum_to_xyz(s1))


def test_xyz_of_reflectance():
    assert xyz_of_reflectance(np.ones(N_SAMPLES))[1] == pytest.approx(100.0, rel=1e-14)
    np.testing.assert_array_equal(xyz_of_reflectance(np.zeros(N_SAMPLES)), np.zeros(3))
    assert xyz_of_reflectance(np.full(N_SAMPLES, 0.30))[1] == pytest.approx(30.0, abs=1e-9)


def test_white_maps_to_unit_rgb():
    white = cmf_table().white_xyz / 100.0
    np.testing.assert_allclose(xyz_to_linear_rgb(white), np.ones(3), atol=1e-3)
    np.testing.assert_allclose(rgb_of_reflectance(np.ones(N_SAMPLES)), np.ones(3), atol=1e-12)
    np.testing.assert_array_equal(xyz_to_linear_rgb(np.zeros(3)), np.zeros(3))
    # grid-integrated white stays close to the textbook D65 white
    np.testing.assert_allclose(xy_of_xyz(white), [0.3127, 0.3290], atol=2e-3)


def test_rgb_round_trip(rng):
    xyz = rng.random((50, 3))
    np.testing.assert_allclose(linear_rgb_to_xyz(xyz_to_linear_rgb(xyz)), xyz, atol=1e-12)


def test_lab():
    white = cmf_table().white_xyz
    np.testing.assert_allclose(xyz_to_lab(white, white), [100.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(xyz_to_lab(np.zeros(3), white), [0.0, 0.0, 0.0], atol=1e-12)
    lab = xyz_to_lab(0.18 * white, white)
    assert lab[0] == pytest.approx(116.0 * 0.18 ** (1 / 3) - 16.0, rel=1e-12)
    assert lab[0] == pytest.approx(49.50, abs=0.01)
    with pytest.raises(ColorDomainError):
        xyz_to_lab(white, np.array([1.0, 0.0, 1.0]))


def test_lab_jacobian_matches_finite_differences(rng):
    white = cmf_table().white_xyz
    for xyz in (np.array([40.0, 30.0, 20.0]), np.array([0.3, 0.2, 0.5])):
        jac = xyz_to_lab_jacobian(xyz, white)
        h = 1e-6
        for c in range(3):
            e = np.zeros(3)
            e[c] = h
            fd = (xyz_to_lab(xyz + e, white) - xyz_to_lab(xyz - e, white)) / (2 * h)
            np.testing.assert_allclose(jac[:, c], fd, rtol=1e-5, atol=1e-7)


def test_delta_e76():
    a = ColorTriple(ColorSpace.lab, (50.0, 0.0, 0.0))
    b = ColorTriple(ColorSpace.lab, (50.0, 3.0, 4.0))
    assert delta_e76(a, a) == 0
    assert delta_e76(a, b) == pytest.approx(5.0)
    assert delta_e76(a, b) == delta_e76(b, a)


@seed(7)
@given(x=LAB, y=LAB, z=LAB)
def test_delta_e76_triangle_inequality(x, y, z):
    assert delta_e76(x, z) <= delta_e76(x, y) + delta_e76(y, z) + 1e-9


def test_delta_e94():
    a = np.array([50.0, 10.0, 0.0])
    assert delta_e94(a, a) == 0
    assert delta_e94(np.array([55.0, 10.0, 5.0]), np.array([50.0, 10.0, 5.0])) == pytest.approx(5.0)
    # chroma-only difference, reference chroma 10
    assert delta_e94(a, np.array([50.0, 20.0, 0.0])) == pytest.approx(10.0 / 1.45, rel=1e-12)


@seed(8)
@given(x=LAB, y=LAB)
def test_delta_e94_never_exceeds_delta_e76(x, y):
    assert delta_e94(x, y) <= delta_e76(x, y) + 1e-9


def test_srgb8_triple_range():
    with pytest.raises(ColorDomainError):
        ColorTriple(ColorSpace.srgb8, (0.0, 256.0, 0.0))


def test_srgb_transfer_round_trip():
    v = np.linspace(0, 1, 101)
    np.testing.assert_allclose(srgb_decode(srgb_encode(v)), v, atol=1e-12)


def test_blackbody_and_daylight():
    bb = blackbody_spd(6500.0)
    visible = (WAVELENGTHS >= 400) & (WAVELENGTHS <= 700)
    assert np.all(bb[visible] > 0)
    x, y = daylight_chromaticity(6504.0)
    assert x == pytest.approx(0.3127, abs=5e-4)
    assert y == pytest.approx(0.3291, abs=5e-4)
    d65 = daylight_spd(6504.0)
    xy = xy_of_xyz(spectrum_to_xyz(d65))
    np.testing.assert_allclose(xy, [0.3127, 0.3290], atol=2e-3)
    with pytest.raises(ColorDomainError):
        daylight_spd(3000.0)


def test_dump_cmf_frame():
    frame = dump_cmf()
    assert list(frame.columns) == ["wavelength", "x_bar", "y_bar", "z_bar", "d65", "w_X", "w_Y", "w_Z"]
    assert len(frame) == N_SAMPLES
