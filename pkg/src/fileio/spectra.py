"""
Spectra CSV: the header row holds the wavelengths in nm, each following row
is one curve. An optional leading `id` column names the curves; without it
they are numbered from 0.

    id,368,378.043478,...,830
    white,0.9,0.9,...,0.9

Values are written with 9 significant digits.
"""

import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from spectral import WAVELENGTHS

from .errors import FormatError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"
ID_COLUMN = "id"


@dataclass
class SpectraTable:
    wavelengths: np.ndarray  # (n_src,)
    ids: list[str]
    values: np.ndarray  # (m, n_src)

    def __len__(self) -> int:
        return len(self.ids)


def numeric_frame(frame: pd.DataFrame, path) -> np.ndarray:
    """Parse a string-typed frame of data rows as float64; the header is line 1."""
    out = np.empty(frame.shape, dtype=np.float64)
    for j, column in enumerate(frame.columns):
        raw = frame[column].str.strip()
        parsed = pd.to_numeric(raw, errors="coerce")
        bad = parsed.isna() & ~raw.str.lower().isin(["nan"])
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise FormatError(
                f"column {column!r}: cannot parse {raw.iloc[row]!r} as a number",
                path,
                line=row + 2,
            )
        out[:, j] = parsed.to_numpy(dtype=np.float64)
    return out


def _wavelengths(tokens: list[str], path) -> np.ndarray:
    if not tokens:
        raise FormatError("header has no wavelengths", path, line=1)
    try:
        wavelengths = np.array([float(t) for t in tokens])
    except ValueError:
        bad = next(t for t in tokens if not _is_float(t))
        raise FormatError(f"header: cannot parse {bad!r} as a wavelength", path, line=1) from None
    if not np.all(np.isfinite(wavelengths)) or np.any(np.diff(wavelengths) <= 0):
        raise FormatError("wavelengths must be finite and strictly increasing", path, line=1)
    return wavelengths


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def parse_spectra(text: str, path: Union[str, Path, None] = None) -> SpectraTable:
    if not text.strip():
        logger.warning(f"{path or 'spectra input'} is empty")
        return SpectraTable(np.empty(0), [], np.empty((0, 0)))
    try:
        frame = pd.read_csv(io.StringIO(text), header=None, dtype=str, keep_default_na=False)
    except pd.errors.ParserError as e:
        raise FormatError(f"malformed CSV: {e}", path) from e

    header = [str(c).strip() for c in frame.iloc[0]]
    has_ids = header[0].lower() == ID_COLUMN
    wavelengths = _wavelengths(header[1:] if has_ids else header, path)

    body = frame.iloc[1:].reset_index(drop=True)
    if body.empty:
        logger.warning(f"{path or 'spectra input'} has no rows")
        return SpectraTable(wavelengths, [], np.empty((0, len(wavelengths))))
    if has_ids:
        ids = body.iloc[:, 0].str.strip().tolist()
        seen: set[str] = set()
        for row, spectrum_id in enumerate(ids):
            if spectrum_id in seen:
                raise FormatError(f"duplicate spectrum id {spectrum_id!r}", path, line=row + 2)
            seen.add(spectrum_id)
        body = body.iloc[:, 1:]
    else:
        ids = [str(i) for i in range(len(body))]
    body.columns = [FLOAT_FORMAT % w for w in wavelengths]
    return SpectraTable(wavelengths, ids, numeric_frame(body, path))


def read_spectra(path: Union[str, Path]) -> SpectraTable:
    path = Path(path)
    return parse_spectra(path.read_text(encoding="utf-8"), path)


def format_spectra(ids: list[str], values: np.ndarray, wavelengths: np.ndarray = WAVELENGTHS) -> str:
    values = np.asarray(values, dtype=np.float64).reshape(len(ids), len(wavelengths))
    frame = pd.DataFrame(values, columns=[FLOAT_FORMAT % w for w in wavelengths])
    frame.insert(0, ID_COLUMN, list(ids))
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_spectra(
    path: Union[str, Path], ids: list[str], values: np.ndarray, wavelengths: np.ndarray = WAVELENGTHS
) -> None:
    Path(path).write_text(format_spectra(ids, values, wavelengths), encoding="utf-8")
