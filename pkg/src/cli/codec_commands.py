import argparse
import logging
from pathlib import Path

import numpy as np

from codec import decode, encode, reconstruction_report
from dataset import load_dataset
from fileio import (
    ManifestRecorder,
    read_codec,
    read_codes,
    read_spectra,
    write_codec,
    write_codes,
    write_spectra,
)
from spectral import N_SAMPLES, WAVELENGTHS, resample_values
from training import ALGEBRA_AXIS, DEFAULT_GRID, grid_search, train

from .common import ensure_parent, override, run_config, sidecar, write_frame

logger = logging.getLogger(__name__)


def train_codec(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    cfg = run_config(args.config)
    train_cfg = override(cfg.train, k=args.k, seed=args.seed)
    recorder.input(args.config, args.data)
    recorder.seeds["seed"] = train_cfg.seed

    dataset = load_dataset(args.data)
    weights, report = train(dataset.reflectance_train, dataset.illumination_train, train_cfg, cfg.loss)
    out = ensure_parent(args.out)
    write_codec(out, weights)
    report_path = write_frame(report.to_frame(), args.report or sidecar(out, ".train.csv"))
    recorder.output(out, report_path)

    quality = {}
    if len(dataset.reflectance_test):
        quality = reconstruction_report(weights, dataset.reflectance_test)
        logger.info(
            f"held-out reconstruction: RMSE {quality['rmse_mean']:.4g}, ΔE76 {quality['delta_e76_mean']:.3f}"
        )
    recorder.details = {
        "train": train_cfg.model_dump(),
        "loss": cfg.loss.model_dump(),
        "best_epoch": report.best_epoch,
        "best_val_loss": report.best_val_loss,
        "reconstruction": quality,
    }
    return sidecar(out, ".manifest.json")


def search_grid(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    cfg = run_config(args.config)
    train_cfg = override(cfg.train, k=args.k, seed=args.seed)
    recorder.input(args.config, args.data)
    recorder.seeds["seed"] = train_cfg.seed

    grid = dict(DEFAULT_GRID)
    if args.algebra:
        grid["lambda_alg"] = list(ALGEBRA_AXIS)
    dataset = load_dataset(args.data)
    frame = grid_search(
        grid,
        train_cfg,
        dataset.reflectance_train,
        dataset.illumination_train,
        dataset.reflectance_test,
        dataset.illumination_test,
        max_points=args.max_points,
        pairs=args.pairs,
    )
    out = write_frame(frame, ensure_parent(args.out))
    recorder.output(out)
    if not frame.empty:
        recorder.details = {"best": frame.iloc[0].to_dict()}
    return sidecar(out, ".manifest.json")


def encode_spectra(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    weights = read_codec(args.codec)
    table = read_spectra(args.input)
    recorder.input(args.codec, args.input)
    values = table.values
    if len(table) and not (
        len(table.wavelengths) == N_SAMPLES and np.allclose(table.wavelengths, WAVELENGTHS, atol=1e-6)
    ):
        logger.info(f"resampling {len(table)} spectra from {len(table.wavelengths)} wavelengths")
        values = resample_values(values, table.wavelengths)
    codes = encode(weights, values) if len(table) else np.empty((0, weights.k))
    write_codes(ensure_parent(args.out), table.ids, codes)
    recorder.output(args.out)
    logger.info(f"encoded {len(table)} spectra to k={weights.k} codes")
    return sidecar(args.out, ".manifest.json")


def decode_codes(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    weights = read_codec(args.codec)
    table = read_codes(args.input)
    recorder.input(args.codec, args.input)
    spectra = decode(weights, table.codes) if len(table) else np.empty((0, N_SAMPLES))
    write_spectra(ensure_parent(args.out), table.ids, spectra)
    recorder.output(args.out)
    logger.info(f"decoded {len(table)} codes")
    return sidecar(args.out, ".manifest.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("train-codec", help="train a latent codec")
    p.add_argument("--data", type=Path, required=True, help="dataset directory from gen-dataset")
    p.add_argument("--out", type=Path, required=True, help="weights JSON")
    p.add_argument("--k", type=int, help="latent size (multiple of 3)")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", type=Path, help="run config file (train.* and loss.* keys)")
    p.add_argument("--report", type=Path, help="per-epoch CSV (default: next to --out)")
    p.set_defaults(handler=train_codec)

    p = subparsers.add_parser("grid-search", help="train one codec per loss weighting and rank them")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="ranking CSV")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", type=Path)
    p.add_argument("--max-points", type=int, help="stop after this many grid points")
    p.add_argument("--pairs", type=int, default=500, help="multi-bounce pairs per variant")
    p.add_argument("--algebra", action="store_true", help="also search the algebra penalty weight")
    p.set_defaults(handler=search_grid)

    p = subparsers.add_parser("encode", help="spectra CSV to code CSV")
    p.add_argument("--codec", type=Path, required=True)
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=encode_spectra)

    p = subparsers.add_parser("decode", help="code CSV to spectra CSV")
    p.add_argument("--codec", type=Path, required=True)
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=decode_codes)
