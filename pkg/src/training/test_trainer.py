import numpy as np
import pytest

from codec import CodecWeights
from models.training import LossWeights, TrainConfig
from spectral import N_SAMPLES, WAVELENGTHS
from training import (
    DEFAULT_GRID,
    Adam,
    AdamW,
    ReduceLROnPlateau,
    TrainingError,
    clip_grad_norm,
    grid_points,
    grid_search,
    total_loss,
    train,
)
from training.trainer import epoch_batches, validation_pairs


def smooth_spectra(rng, count, high=1.0):
    centers = rng.uniform(400, 700, count)
    widths = rng.uniform(30, 120, count)
    curves = np.exp(-0.5 * ((WAVELENGTHS[None, :] - centers[:, None]) / widths[:, None]) ** 2)
    return high * (0.05 + 0.9 * curves)


@pytest.fixture
def data():
    rng = np.random.default_rng(8)
    return smooth_spectra(rng, 60), smooth_spectra(rng, 30, high=2.0)


@pytest.fixture
def cfg():
    return TrainConfig(k=6, lr=5e-3, batch_size=16, max_epochs=4, patience=4, seed=3)


def test_adam_moves_against_gradient():
    params = {"w": np.array([1.0, -1.0])}
    opt = Adam(lr=0.1)
    opt.step(params, {"w": np.array([2.0, -3.0])})
    # first Adam step has magnitude lr in every coordinate
    np.testing.assert_allclose(params["w"], [0.9, -0.9], rtol=1e-6)
    assert opt.t == 1


def test_adamw_decouples_weight_decay():
    params = {"w": np.array([1.0])}
    opt = AdamW(lr=0.1, weight_decay=0.5)
    opt.step(params, {"w": np.array([0.0])})
    assert params["w"][0] == pytest.approx(0.95)


def test_clip_grad_norm():
    grads = {"a": np.array([3.0]), "b": np.array([4.0])}
    assert clip_grad_norm(grads, 1.0) == pytest.approx(5.0)
    norm = np.sqrt(grads["a"][0] ** 2 + grads["b"][0] ** 2)
    assert norm == pytest.approx(1.0, rel=1e-5)
    small = {"a": np.array([0.1])}
    clip_grad_norm(small, 1.0)
    assert small["a"][0] == 0.1


def test_plateau_scheduler():
    opt = Adam(lr=1.0)
    sched = ReduceLROnPlateau(opt, factor=0.5, patience=2, min_lr=0.3)
    for loss in [1.0, 1.0, 1.0, 1.0]:
        sched.step(loss)
    assert opt.lr == 0.5
    for _ in range(6):
        sched.step(1.0)
    assert opt.lr == 0.3


def test_epoch_batches_visit_every_pair_once(data, cfg):
    r, l = data
    batches = list(epoch_batches(r, l, cfg, epoch=1))
    assert len(batches) == int(np.ceil(60 * 30 / 16))
    reflectances = np.concatenate([b[0] for b in batches])
    lights = np.concatenate([b[1] for b in batches])
    assert len(reflectances) == len(lights) == 60 * 30

    row_of = {row.tobytes(): i for i, row in enumerate(r)}
    r_idx = [row_of[row.tobytes()] for row in reflectances]
    # scaled copies keep their shape, so the best cosine names the illuminant
    unit = l / np.linalg.norm(l, axis=1, keepdims=True)
    l_idx = np.argmax(lights @ unit.T, axis=1)
    assert len(set(zip(r_idx, l_idx))) == 60 * 30

    scales = lights.max(axis=1) / l[l_idx].max(axis=1)
    assert np.all((scales >= cfg.illum_scale_min) & (scales <= cfg.illum_scale_max))
    assert np.std(scales) > 0


def test_zero_epochs_returns_initial_weights(data, cfg):
    cfg = cfg.model_copy(update={"max_epochs": 0, "patience": 0})
    weights, report = train(*data, cfg, LossWeights())
    initial = CodecWeights.initialize(6, cfg.seed)
    np.testing.assert_array_equal(weights.raw_enc, initial.raw_enc)
    np.testing.assert_array_equal(weights.raw_dec, initial.raw_dec)
    assert report.rows == []


def test_training_is_deterministic(data, cfg):
    a, report_a = train(*data, cfg, LossWeights())
    b, report_b = train(*data, cfg, LossWeights())
    np.testing.assert_array_equal(a.raw_enc, b.raw_enc)
    np.testing.assert_array_equal(a.raw_dec, b.raw_dec)
    assert report_a.to_frame().equals(report_b.to_frame())


def test_training_reduces_validation_loss(data, cfg):
    weights, report = train(*data, cfg, LossWeights())
    assert report.best_val_loss < report.initial_val_loss
    frame = report.to_frame()
    assert list(frame["epoch"]) == list(range(1, len(frame) + 1))
    assert frame["best"].sum() == 1
    assert frame.loc[frame["best"], "val_total"].iloc[0] == frame["val_total"].min()
    assert np.all(weights.w_enc >= 0) and np.all(weights.w_dec >= 0)
    assert weights.training_meta["seed"] == cfg.seed
    assert weights.training_meta["epochs"] == len(frame)


def test_training_rejects_bad_data(data, cfg):
    r, l = data
    with pytest.raises(TrainingError):
        train(r[:0], l, cfg, LossWeights())
    bad = r.copy()
    bad[:, 5] = np.nan
    with pytest.raises(TrainingError):
        train(bad, l, cfg, LossWeights())


def test_config_invariants():
    with pytest.raises(ValueError):
        TrainConfig(val_fraction=0.5)
    with pytest.raises(ValueError):
        TrainConfig(max_epochs=5, patience=10)
    with pytest.raises(ValueError):
        TrainConfig(k=4)
    with pytest.raises(ValueError):
        LossWeights(lambda_rec=-1.0)


def test_grid_points():
    points = grid_points({"lambda_rec": [0.0, 1.0], "lambda_code": [0.0, 0.5]})
    # the all-zero tuple is skipped
    assert len(points) == 3
    assert all(p.lambda_e2e == 0 for p in points)
    assert len(grid_points({"lambda_rec": [1.0, 2.0, 3.0]}, max_points=2)) == 2
    with pytest.raises(ValueError):
        grid_points({"lambda_nope": [1.0]})


def test_default_grid_size():
    points = grid_points(DEFAULT_GRID)
    assert len(points) == 7 * 5 * 5 * 5 - 1 == 874
    assert all(p.lambda_alg == 0 for p in points)


def test_grid_search_ranks_variants(data, cfg):
    r, l = data
    cfg = cfg.model_copy(update={"max_epochs": 1, "patience": 1})
    frame = grid_search(
        {"lambda_rec": [1.0], "lambda_code": [0.25, 1.0]}, cfg, r, l, r, l, pairs=20
    )
    assert len(frame) == 2
    assert set(frame["variant"]) == {0, 1}
    assert list(frame["rank"]) == [1, 2]
    assert list(frame["mean_de94"]) == sorted(frame["mean_de94"])
    single = grid_search({"lambda_rec": [1.0]}, cfg, r, l, r, l, pairs=20)
    assert len(single) == 1


def test_trained_loss_below_initial_on_training_pairs(data, cfg):
    r, l = data
    weights, _ = train(r, l, cfg, LossWeights())
    initial = CodecWeights.initialize(6, cfg.seed)
    pairs = validation_pairs(r, l)
    trained = total_loss(weights, pairs.reflectance, pairs.illumination, LossWeights())
    assert trained < total_loss(initial, pairs.reflectance, pairs.illumination, LossWeights())
