"""Latent code CSV: `id,z0,...,z{k-1}`, one code per row, 9 significant digits."""

import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from .errors import FormatError
from .spectra import FLOAT_FORMAT, numeric_frame

logger = logging.getLogger(__name__)

ID_COLUMN = "id"


@dataclass
class CodeTable:
    ids: list[str]
    codes: np.ndarray  # (m, k)

    @property
    def k(self) -> int:
        return self.codes.shape[1]

    def __len__(self) -> int:
        return len(self.ids)


def _code_columns(k: int) -> list[str]:
    return [f"z{i}" for i in range(k)]


def parse_codes(text: str, path: Union[str, Path, None] = None) -> CodeTable:
    if not text.strip():
        logger.warning(f"{path or 'code input'} is empty")
        return CodeTable([], np.empty((0, 0)))
    try:
        frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    except pd.errors.ParserError as e:
        raise FormatError(f"malformed CSV: {e}", path) from e

    columns = [c.strip() for c in frame.columns]
    if not columns or columns[0] != ID_COLUMN:
        raise FormatError(f"first column must be {ID_COLUMN!r}", path, line=1)
    expected = _code_columns(len(columns) - 1)
    if columns[1:] != expected or not expected:
        raise FormatError(f"code columns must be z0..z{len(expected) - 1}", path, line=1)

    ids = frame.iloc[:, 0].str.strip().tolist()
    if len(set(ids)) != len(ids):
        seen: set[str] = set()
        for row, code_id in enumerate(ids):
            if code_id in seen:
                raise FormatError(f"duplicate id {code_id!r}", path, line=row + 2)
            seen.add(code_id)
    if frame.empty:
        logger.warning(f"{path or 'code input'} has no rows")
        return CodeTable([], np.empty((0, len(expected))))
    return CodeTable(ids, numeric_frame(frame.iloc[:, 1:], path))


def read_codes(path: Union[str, Path]) -> CodeTable:
    path = Path(path)
    return parse_codes(path.read_text(encoding="utf-8"), path)


def format_codes(ids: list[str], codes: np.ndarray) -> str:
    codes = np.atleast_2d(np.asarray(codes, dtype=np.float64))
    if len(ids) != len(codes):
        raise ValueError(f"{len(ids)} ids for {len(codes)} codes")
    frame = pd.DataFrame(codes, columns=_code_columns(codes.shape[1]))
    frame.insert(0, ID_COLUMN, list(ids))
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_codes(path: Union[str, Path], ids: list[str], codes: np.ndarray) -> None:
    Path(path).write_text(format_codes(ids, codes), encoding="utf-8")
