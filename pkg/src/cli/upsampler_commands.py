import argparse
import logging
from pathlib import Path

from colorimetry import srgb_decode
from dataset import load_dataset
from fileio import ManifestRecorder, read_codec, read_ppm, read_upsampler, write_raw, write_upsampler
from upsampler import ClampStats, train_upsampler, upsample_image

from .common import ensure_parent, override, run_config, sidecar, write_frame

logger = logging.getLogger(__name__)


def train(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    cfg = override(run_config(args.config).upsampler, seed=args.seed, epochs=args.epochs)
    recorder.input(args.config, args.codec, args.data)
    recorder.seeds["seed"] = cfg.seed

    codec = read_codec(args.codec)
    dataset = load_dataset(args.data)
    weights, report = train_upsampler(dataset.reflectance_train, codec, cfg)
    out = ensure_parent(args.out)
    write_upsampler(out, weights)
    report_path = write_frame(report.to_frame(), args.report or sidecar(out, ".train.csv"))
    recorder.output(out, report_path)
    recorder.details = {"config": cfg.model_dump(), "final_latent_loss": report.final_latent}
    return sidecar(out, ".manifest.json")


def upsample_texture(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    weights = read_upsampler(args.upsampler)
    texture = read_ppm(args.input)
    recorder.input(args.upsampler, args.input)

    stats = ClampStats()
    latent = upsample_image(weights, srgb_decode(texture / 255.0), stats)
    write_raw(ensure_parent(args.out), latent)
    recorder.output(args.out)
    if stats.clamped:
        logger.warning(f"{stats.clamped} of {stats.evaluated} latent values were clamped to zero")
    logger.info(f"upsampled {texture.shape[1]}x{texture.shape[0]} texture to k={weights.k}")
    return sidecar(args.out, ".manifest.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("train-upsampler", help="fit the RGB to latent network against a codec")
    p.add_argument("--codec", type=Path, required=True)
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="upsampler weights JSON")
    p.add_argument("--seed", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--config", type=Path, help="run config file (upsampler.* keys)")
    p.add_argument("--report", type=Path, help="per-epoch CSV (default: next to --out)")
    p.set_defaults(handler=train)

    p = subparsers.add_parser("upsample", help="8-bit sRGB texture (PPM) to a raw latent image")
    p.add_argument("--upsampler", type=Path, required=True)
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=upsample_texture)
