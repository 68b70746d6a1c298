import argparse
import logging
from pathlib import Path

from dataset import load_dataset
from evaluation import REFERENCE_DE94, multibounce_eval, results_frame
from fileio import ManifestRecorder, read_codec

from .common import ensure_parent, sidecar, write_frame

logger = logging.getLogger(__name__)


def eval_multibounce(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    codec = read_codec(args.codec)
    dataset = load_dataset(args.data)
    recorder.input(args.codec, args.data)
    recorder.seeds["seed"] = args.seed

    results = multibounce_eval(
        codec,
        dataset.reflectance_test,
        dataset.illumination_test,
        bounces=args.bounces,
        pairs=args.pairs,
        seed=args.seed,
    )
    frame = results_frame(results)
    print(frame.to_string(index=False, float_format=lambda v: f"{v:.4f}"))
    if codec.k == 6:
        for r in results:
            if r.bounce in REFERENCE_DE94:
                logger.info(f"bounce {r.bounce}: mean ΔE94 {r.mean:.3f} (reference {REFERENCE_DE94[r.bounce]})")
    recorder.details = {"k": codec.k, "pairs": args.pairs, "bounces": args.bounces}
    if args.csv is None:
        return sidecar(args.codec, ".multibounce.manifest.json")
    out = write_frame(frame, ensure_parent(args.csv))
    recorder.output(out)
    return sidecar(out, ".manifest.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("eval-multibounce", help="ΔE94 of latent against spectral light transport chains")
    p.add_argument("--codec", type=Path, required=True)
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--pairs", type=int, default=500)
    p.add_argument("--bounces", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", type=Path)
    p.set_defaults(handler=eval_multibounce)
