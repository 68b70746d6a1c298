import argparse
import logging
from dataclasses import asdict
from pathlib import Path

import numpy as np
import pandas as pd

from evaluation import pass_count_report, pixel_error_frame, scene_color_report
from fileio import (
    ManifestRecorder,
    read_codec,
    read_raw,
    read_scene,
    read_upsampler,
    write_ppm,
    write_raw,
)
from models.render import RenderJob, RenderMode
from renderer import (
    SCENE_KINDS,
    ChannelImage,
    cornell_scene,
    decode_image,
    error_map,
    error_map_to_gray,
    image_to_srgb,
    render,
    render_latent_multipass,
)

from .common import ensure_parent, sidecar, with_extension, write_frame

logger = logging.getLogger(__name__)


def render_scene(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    scene = read_scene(args.scene) if args.scene else cornell_scene(args.preset)
    job = RenderJob(
        mode=args.mode,
        width=args.width,
        height=args.height,
        spp=args.spp,
        max_depth=args.depth,
        seed=args.seed,
        jitter=not args.no_jitter,
    )
    codec = read_codec(args.codec) if args.codec else None
    upsampler = read_upsampler(args.upsampler) if args.upsampler else None
    recorder.input(args.scene, args.codec, args.upsampler)
    recorder.seeds["seed"] = job.seed

    if job.mode == RenderMode.latent and args.multipass:
        rendered = render_latent_multipass(scene, job, codec, upsampler, workers=args.threads)  # type: ignore[arg-type]
    else:
        rendered = render(scene, job, codec, upsampler, workers=args.threads)
    image = decode_image(rendered, codec) if job.mode == RenderMode.latent else rendered  # type: ignore[arg-type]

    base = ensure_parent(args.out)
    outputs = [with_extension(base, ".raw"), with_extension(base, ".ppm")]
    write_raw(outputs[0], image.data)
    write_ppm(outputs[1], image_to_srgb(image))
    if args.keep_latent:
        if job.mode == RenderMode.latent:
            outputs.append(with_extension(base, ".latent.raw"))
            write_raw(outputs[-1], rendered.data)
        else:
            logger.warning(f"--keep-latent has no effect in {job.mode.value} mode")
    recorder.output(*outputs)

    stats = rendered.stats
    recorder.details = {
        "job": job.model_dump(mode="json"),
        "scene": str(args.scene) if args.scene else f"preset:{args.preset}",
        "channels": rendered.channels,
        "stats": asdict(stats) if stats is not None else None,
    }
    logger.info(
        f"rendered {job.width}x{job.height} at {job.spp} spp in {job.mode.value} mode"
        + (f", {stats.shading_evaluations} shading evaluations" if stats is not None else "")
    )
    return with_extension(base, ".manifest.json")


def _read_image(path: Path) -> ChannelImage:
    return ChannelImage(read_raw(path).astype(np.float64))


def map_errors(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    a, b = _read_image(args.a), _read_image(args.b)
    recorder.input(args.a, args.b)
    mse, mean = error_map(a, b)
    out = ensure_parent(args.out)
    write_ppm(out, error_map_to_gray(mse))
    recorder.output(out)
    if args.csv is not None:
        recorder.output(write_frame(pixel_error_frame(a, b), ensure_parent(args.csv)))
    recorder.details = {"mean_mse": mean, "max_mse": float(np.max(mse))}
    logger.info(f"mean MSE {mean:.6g}, max {float(np.max(mse)):.6g}")
    return sidecar(out, ".manifest.json")


def report(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    gt, test = _read_image(args.gt), _read_image(args.test)
    recorder.input(args.gt, args.test)
    summary = scene_color_report(gt, test)
    row = {"gt": str(args.gt), "test": str(args.test), **asdict(summary)}
    print(
        f"mean ΔE76 {summary.mean_de76:.4f}  p95 ΔE76 {summary.p95_de76:.4f}  "
        f"MSE {summary.mse:.6g}  pixels {summary.pixels}"
    )
    if args.k is not None:
        passes = pass_count_report(k=args.k)
        row.update(asdict(passes))
        print(f"k={args.k}: {passes.passes} RGB passes, {passes.ratio:.2f}x fewer shader evaluations")
    recorder.details = row
    if args.csv is None:
        return sidecar(args.test, ".report.manifest.json")
    out = write_frame(pd.DataFrame([row]), ensure_parent(args.csv))
    recorder.output(out)
    return sidecar(out, ".manifest.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("render", help="path trace a scene in spectral, latent or rgb mode")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--scene", type=Path, help="scene file")
    source.add_argument("--preset", choices=SCENE_KINDS, help="built-in reference scene")
    p.add_argument("--mode", choices=[m.value for m in RenderMode], default=RenderMode.spectral.value)
    p.add_argument("--codec", type=Path, help="codec weights (latent mode)")
    p.add_argument("--upsampler", type=Path, help="upsampler weights for rgb: materials (latent mode)")
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=64)
    p.add_argument("--spp", type=int, default=16)
    p.add_argument("--depth", type=int, default=3, help="bounces; -1 for unbounded with Russian roulette")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-jitter", action="store_true", help="trace through pixel centres")
    p.add_argument("--multipass", action="store_true", help="latent mode: one RGB pass per code block")
    p.add_argument("--threads", type=int, help="worker threads (default: HADACODEC_THREADS)")
    p.add_argument("--keep-latent", action="store_true", help="also write <out>.latent.raw")
    p.add_argument("--out", type=Path, required=True, help="output base name")
    p.set_defaults(handler=render_scene)

    p = subparsers.add_parser("error-map", help="per-pixel squared error between two raw images")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--out", type=Path, required=True, help="grey PPM")
    p.add_argument("--csv", type=Path, help="per-pixel ΔE76 and MSE")
    p.set_defaults(handler=map_errors)

    p = subparsers.add_parser("report", help="colour error of a test render against ground truth")
    p.add_argument("--gt", type=Path, required=True)
    p.add_argument("--test", type=Path, required=True)
    p.add_argument("--k", type=int, help="also report the RGB pass count for this latent size")
    p.add_argument("--csv", type=Path)
    p.set_defaults(handler=report)
