import hashlib
import logging
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from pydantic import ValidationError

from hadacodec import __version__
from models.files import RunManifest

from .errors import FormatError

logger = logging.getLogger(__name__)

CHUNK = 1 << 20


def sha256_file(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        while chunk := f.read(CHUNK):
            digest.update(chunk)
    return digest.hexdigest()


def _hashes(paths: Iterable[Union[str, Path]]) -> dict[str, str]:
    out = {}
    for p in paths:
        p = Path(p)
        if p.is_dir():
            for child in sorted(c for c in p.rglob("*") if c.is_file()):
                out[str(child)] = sha256_file(child)
        elif p.exists():
            out[str(p)] = sha256_file(p)
        else:
            logger.warning(f"manifest: {p} does not exist, not hashed")
    return out


class ManifestRecorder:
    """Collects inputs, outputs and seeds of one command run."""

    def __init__(self, command: str, argv: Optional[list[str]] = None):
        self.command = command
        self.argv = list(argv or [])
        self.started_at = datetime.now(timezone.utc)
        self._t0 = time.perf_counter()
        self.inputs: list[Path] = []
        self.outputs: list[Path] = []
        self.seeds: dict[str, int] = {}
        self.details: dict[str, Any] = {}

    def input(self, *paths: Union[str, Path, None]) -> None:
        self.inputs.extend(Path(p) for p in paths if p is not None)

    def output(self, *paths: Union[str, Path]) -> None:
        self.outputs.extend(Path(p) for p in paths)

    def build(self) -> RunManifest:
        return RunManifest(
            version=__version__,
            command=self.command,
            argv=self.argv,
            seeds=self.seeds,
            inputs=_hashes(self.inputs),
            outputs=_hashes(self.outputs),
            started_at=self.started_at,
            elapsed_seconds=time.perf_counter() - self._t0,
            details=self.details,
        )

    def write(self, path: Union[str, Path]) -> RunManifest:
        manifest = self.build()
        write_manifest(path, manifest)
        return manifest


def write_manifest(path: Union[str, Path], manifest: RunManifest) -> None:
    Path(path).write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"wrote manifest {path}")


def read_manifest(path: Union[str, Path]) -> RunManifest:
    path = Path(path)
    try:
        return RunManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise FormatError(f"invalid manifest: {e.errors()[0]['msg']}", path) from e
