import argparse
import logging
import sys
from pathlib import Path

from colorimetry import dump_cmf
from dataset import build_dataset, write_dataset
from fileio import ManifestRecorder

from .common import CSV_FLOAT_FORMAT, ensure_parent, override, run_config, sidecar, write_frame

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
STDOUT_MANIFEST = "dump-cmf.manifest.json"


def gen_dataset(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    cfg = override(run_config(args.config).dataset, seed=args.seed, munsell=args.munsell, lspdd=args.lspdd)
    recorder.input(args.config, cfg.munsell, cfg.lspdd)
    recorder.seeds["seed"] = cfg.seed

    dataset = build_dataset(cfg)
    written = write_dataset(dataset, args.out)
    recorder.output(*written)
    recorder.details = {"config": cfg.model_dump(mode="json"), **dataset.stats}
    logger.info(f"dataset written to {args.out}: {dataset.stats['counts']}")
    return Path(args.out) / MANIFEST


def cmf_table(args: argparse.Namespace, recorder: ManifestRecorder) -> Path:
    frame = dump_cmf()
    if args.out is None:
        frame.to_csv(sys.stdout, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        return Path(STDOUT_MANIFEST)
    out = write_frame(frame, ensure_parent(args.out))
    recorder.output(out)
    return sidecar(out, ".manifest.json")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("gen-dataset", help="generate the reflectance and illumination sets")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--munsell", type=Path, help="measured reflectance spectra CSV")
    p.add_argument("--lspdd", type=Path, help="measured lamp spectra CSV")
    p.add_argument("--seed", type=int)
    p.add_argument("--config", type=Path, help="run config file (dataset.* keys)")
    p.set_defaults(handler=gen_dataset)

    p = subparsers.add_parser("dump-cmf", help="write the colour matching tables on the canonical grid")
    p.add_argument("--out", type=Path, help="CSV file (default: stdout, manifest in the working directory)")
    p.set_defaults(handler=cmf_table)
