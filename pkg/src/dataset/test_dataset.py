import numpy as np
import pytest

from colorimetry import blackbody_spd, cmf_table, xy_of_xyz, xyz_of_reflectance, xyz_of_xy
from dataset import (
    DatasetError,
    LabeledSpectrum,
    Origin,
    Split,
    SpectralDataset,
    cosine_dedup,
    flip_augment,
    gen_blackbody,
    gen_daylight,
    gen_narrowband,
    gen_optimal_reflectances,
    gen_smooth_saturated,
    hue_rgb,
    hue_targets,
    load_dataset,
    load_munsell,
    munsell_standin,
    ring_sector_split,
    solve_reflectance,
    write_dataset,
)
from dataset.lsq import project, solve
from models.dataset import SplitConfig
from spectral import N_SAMPLES, WAVELENGTHS, Role, SpectralCurve, WavelengthGrid, cosine_similarity

VISIBLE = WavelengthGrid.visible_mask()


@pytest.fixture
def rng():
    return np.random.default_rng(31)


def illuminant(values, spectrum_id="l", origin=Origin.broadband_synth):
    return LabeledSpectrum(spectrum_id, SpectralCurve(values, Role.illumination), origin)


def test_hue_rgb():
    np.testing.assert_array_equal(hue_rgb(0.0), [1, 0, 0])
    np.testing.assert_array_equal(hue_rgb(1 / 3), [0, 1, 0])
    np.testing.assert_array_equal(hue_rgb(2 / 3), [0, 0, 1])
    np.testing.assert_array_equal(hue_rgb(1 / 6), [1, 1, 0])
    np.testing.assert_allclose(hue_rgb(1 / 12), [1, 0.5, 0])


def test_flat_reflectance_meets_white_target():
    white_xy = xy_of_xyz(cmf_table().white_xyz)
    target = xyz_of_xy(white_xy[0], white_xy[1], 30.0)
    flat = np.full(N_SAMPLES, 0.30)
    np.testing.assert_allclose(cmf_table().w_xyz @ flat, target, atol=1e-9)


def test_projection_is_feasible_and_nearest(rng):
    c = rng.uniform(0.1, 2.0, 20)
    lo, hi = np.zeros(20), np.ones(20)
    for _ in range(20):
        y = rng.normal(0.5, 1.0, 20)
        d = rng.uniform(0.1, 0.9) * c.sum()
        x = project(y, c, d, lo, hi)
        assert c @ x == pytest.approx(d, abs=1e-9)
        assert np.all(x >= lo) and np.all(x <= hi)
        other = project(rng.normal(0.5, 1.0, 20), c, d, lo, hi)
        assert np.linalg.norm(x - y) <= np.linalg.norm(other - y) + 1e-12


def test_solver_kkt(rng):
    a = rng.normal(size=(2, 10))
    b = rng.normal(size=2)
    c = rng.uniform(0.5, 1.5, 10)
    result = solve(a, b, c, 3.0, np.zeros(10), np.ones(10))
    assert result.equality_residual <= 1e-6
    assert result.projected_gradient <= 1e-6
    assert np.all(result.x >= 0) and np.all(result.x <= 1)
    with pytest.raises(DatasetError):
        solve(a, b, c, c.sum() + 1.0, np.zeros(10), np.ones(10))


def test_optimal_reflectances():
    spectra = gen_optimal_reflectances()
    assert len(spectra) == 36
    assert len({s.id for s in spectra}) == 36
    for s in spectra:
        r = s.curve.values
        assert np.all(r >= 0) and np.all(r <= 1)
        assert np.all(r[~VISIBLE] == 0)
        assert xyz_of_reflectance(r)[1] == pytest.approx(30.0, abs=1e-6)
        assert s.origin == Origin.optimal


def test_optimal_solution_is_stationary():
    for _, target in hue_targets(4, np.array([0.6, 0.98])):
        result = solve_reflectance(target)
        assert result.equality_residual <= 1e-6
        assert result.projected_gradient <= 1e-6


def test_smooth_saturated():
    spectra = gen_smooth_saturated()
    assert len(spectra) == 144
    for s in spectra:
        assert np.all(s.curve.values >= 0) and np.all(s.curve.values <= 1)
        assert s.origin == Origin.smooth_saturated


def test_synthetic_illuminants():
    blackbody = gen_blackbody()
    daylight = gen_daylight()
    narrow = gen_narrowband(seed=0)
    assert (len(blackbody), len(daylight), len(narrow)) == (82, 13, 367)
    for s in blackbody + daylight + narrow:
        assert s.curve.values.max() == 1.0
        assert np.all(s.curve.values[~VISIBLE] == 0)
    assert np.all(blackbody_spd(6500.0)[VISIBLE] > 0)
    again = gen_narrowband(seed=0)
    np.testing.assert_array_equal(narrow[-1].curve.values, again[-1].curve.values)


def test_flip_augment():
    flat = illuminant(np.where(VISIBLE, 1.0, 0.0), "flat")
    assert flip_augment([flat]) == []

    ramp = np.where(VISIBLE, np.linspace(0.0, 1.0, N_SAMPLES), 0.0)
    (flipped,) = flip_augment([illuminant(ramp, "ramp")])
    visible = flipped.curve.values[VISIBLE]
    assert np.all(np.diff(visible) < 0)
    assert flipped.origin == Origin.flipped
    assert flipped.id == "ramp-flipped"

    peak = np.where(VISIBLE, np.exp(-0.5 * ((WAVELENGTHS - 550) / 40) ** 2), 0.0)
    peak = peak - peak[VISIBLE].min() * VISIBLE
    peak /= peak.max()
    (twice,) = flip_augment(flip_augment([illuminant(peak, "peak")]))
    np.testing.assert_allclose(twice.curve.values, peak, atol=1e-12)


def test_cosine_dedup():
    peak_a = np.where(np.abs(WAVELENGTHS - 450) < 15, 1.0, 0.0)
    peak_b = np.where(np.abs(WAVELENGTHS - 650) < 15, 1.0, 0.0)
    spectra = [illuminant(peak_a, "a"), illuminant(peak_a, "a2"), illuminant(peak_b, "b")]
    kept = cosine_dedup(spectra)
    assert [s.id for s in kept] == ["a", "b"]

    pool = cosine_dedup(gen_narrowband(seed=1) + gen_blackbody(), 0.95)
    values = np.stack([s.curve.values for s in pool])
    for i in range(len(values)):
        sims = cosine_similarity(values[i], np.delete(values, i, axis=0))
        assert np.max(sims) < 0.95


def test_split_identical_spectra():
    spectra = [illuminant(np.full(N_SAMPLES, 0.5), f"s{i}") for i in range(10)]
    labeled = ring_sector_split(spectra, SplitConfig(angular_bins=36, seed=4))
    assert sum(s.split == Split.train for s in labeled) == 7
    assert sum(s.split == Split.test for s in labeled) == 3


def test_split_is_deterministic_partition():
    spectra = munsell_standin(200, seed=2)
    cfg = SplitConfig(angular_bins=36, seed=9)
    a = ring_sector_split(spectra, cfg)
    b = ring_sector_split(spectra, cfg)
    assert [s.split for s in a] == [s.split for s in b]
    assert all(s.split in (Split.train, Split.test) for s in a)
    assert [s.id for s in a] == [s.id for s in spectra]


def test_split_train_fraction():
    spectra = munsell_standin(600, seed=5)
    labeled = ring_sector_split(spectra, SplitConfig(angular_bins=36, seed=0))
    fraction = np.mean([s.split == Split.train for s in labeled])
    assert abs(fraction - 0.70) <= 0.05


def test_split_labels_are_split_members():
    labeled = ring_sector_split(munsell_standin(100, seed=0), SplitConfig(angular_bins=36, seed=0))
    assert all(isinstance(s.split, Split) for s in labeled)
    train = [s for s in labeled if s.split is Split.train]
    assert 50 <= len(train) <= 90

    dataset = SpectralDataset(labeled)
    assert len(dataset.reflectance_train) == len(train)


def test_munsell_standin():
    spectra = munsell_standin(64, seed=0)
    assert len(spectra) == 64
    for s in spectra:
        assert s.kind == Role.reflectance
        assert np.all(s.curve.values[~VISIBLE] == 0)
        assert s.curve.values.max() <= 1


def test_load_munsell(tmp_path, caplog):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert load_munsell(empty) == []
    assert "empty" in caplog.text

    wl = np.arange(380, 801)
    curves = {"m1": 0.2 + 0.5 * (wl - 380) / 420, "m2": 0.5 + 0.3 * np.sin(wl / 30)}
    lines = ["id," + ",".join(str(w) for w in wl)] + [
        name + "," + ",".join(f"{v:.12g}" for v in values) for name, values in curves.items()
    ]
    path = tmp_path / "munsell.csv"
    path.write_text("\n".join(lines) + "\n")
    spectra = load_munsell(path)
    assert [s.id for s in spectra] == ["m1", "m2"]
    for index in (5, 20, 30):
        lam = WAVELENGTHS[index]
        lower = int(np.floor(lam))
        t = lam - lower
        expected = (1 - t) * np.sin(lower / 30) + t * np.sin((lower + 1) / 30)
        assert spectra[1].curve.values[index] == pytest.approx(0.5 + 0.3 * expected, abs=1e-9)
    assert np.all(spectra[0].curve.values[~VISIBLE] == 0)


def test_dataset_round_trip(tmp_path):
    refl = munsell_standin(6, seed=1)
    lights = gen_daylight((5000, 6500))
    spectra = [s.with_split(Split.train if i % 2 else Split.test) for i, s in enumerate(refl + lights)]
    dataset = SpectralDataset(spectra, {"dedup_kept": 2})
    write_dataset(dataset, tmp_path)
    loaded = load_dataset(tmp_path)
    assert [s.id for s in loaded.spectra] == [
        s.id for kind in (Role.reflectance, Role.illumination) for split in (Split.train, Split.test)
        for s in dataset.select(kind, split)
    ]
    np.testing.assert_allclose(loaded.reflectance_train, dataset.reflectance_train, rtol=1e-8)
    assert loaded.stats == {"dedup_kept": 2}
    assert {s.origin for s in loaded.spectra} == {Origin.munsell_standin, Origin.daylight_synth}


def test_load_dataset_missing_files(tmp_path):
    with pytest.raises(DatasetError):
        load_dataset(tmp_path)


@pytest.mark.slow
def test_build_dataset(tmp_path):
    from dataset import build_dataset
    from models.dataset import DatasetConfig

    dataset = build_dataset(DatasetConfig(seed=0))
    counts = dataset.stats["counts"]
    assert counts["reflectance_train"] + counts["reflectance_test"] == DatasetConfig().standin_count + 36 + 144
    assert len(dataset.reflectance_test) > 0 and len(dataset.illumination_test) > 0
    assert np.all(dataset.illumination_train.max(axis=1) == 1.0)
    assert dataset.stats["dedup_kept"] == counts["illumination_train"] + counts["illumination_test"]
