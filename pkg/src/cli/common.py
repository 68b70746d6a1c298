import argparse
import logging
from pathlib import Path
from typing import Callable, Optional, TypeVar, Union

import pandas as pd
from pydantic import BaseModel

from fileio import ManifestRecorder, read_config
from models.run import RunConfig

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.9g"

# a command returns where its manifest goes
Handler = Callable[[argparse.Namespace, ManifestRecorder], Path]
Model = TypeVar("Model", bound=BaseModel)


def run_config(path: Optional[Path]) -> RunConfig:
    return read_config(path) if path is not None else RunConfig()


def override(model: Model, **updates) -> Model:
    """Validated copy with the non-None updates applied."""
    changes = {k: v for k, v in updates.items() if v is not None}
    if not changes:
        return model
    return type(model).model_validate({**model.model_dump(), **changes})


def sidecar(path: Union[str, Path], suffix: str) -> Path:
    """weights.json + '.manifest.json' -> weights.manifest.json"""
    path = Path(path)
    return path.with_name(path.stem + suffix)


def with_extension(base: Union[str, Path], extension: str) -> Path:
    """img + '.raw' -> img.raw; base names may contain dots."""
    base = Path(base)
    return base.with_name(base.name + extension)


def write_frame(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"wrote {len(frame)} rows to {path}")
    return path


def ensure_parent(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path
