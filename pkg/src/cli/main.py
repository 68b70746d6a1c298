import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import logfire
from pydantic import ValidationError

from config import Settings
from fileio import ManifestRecorder
from hadacodec import HadacodecError, __version__

from . import codec_commands, data_commands, eval_commands, render_commands, upsampler_commands
from .common import ensure_parent

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadacodec",
        description="Learned spectral codec: dataset generation, training, rendering and evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="overrides HADACODEC_LOG_LEVEL")
    parser.add_argument("--manifest", type=Path, help="run manifest path (default: next to the command output)")
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for module in (data_commands, codec_commands, upsampler_commands, render_commands, eval_commands):
        module.register(subparsers)
    return parser


def setup_logging(settings: Settings, level: Optional[str] = None) -> None:
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        level=(level or settings.log_level).upper(),
    )
    logfire.configure(send_to_logfire="if-token-present", console=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and --version exit 0, usage errors exit 2
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    settings = Settings()  # pyright: ignore [reportCallIssue]
    setup_logging(settings, args.log_level)

    recorder = ManifestRecorder(args.command, argv)
    try:
        with logfire.span("hadacodec {command}", command=args.command):
            manifest = args.handler(args, recorder)
            recorder.write(ensure_parent(args.manifest or manifest))
    except (HadacodecError, ValidationError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"hadacodec {args.command}: error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK
