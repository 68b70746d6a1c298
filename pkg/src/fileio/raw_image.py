"""
Raw channel images.

Layout: the 8-byte magic `HCRAW001`, then width, height and channel count as
little-endian uint32, then width*height*channels little-endian float32 values
in row-major (y, x, channel) order.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from .errors import FormatError

logger = logging.getLogger(__name__)

MAGIC = b"HCRAW001"
HEADER_DTYPE = np.dtype("<u4")
PIXEL_DTYPE = np.dtype("<f4")
HEADER_SIZE = len(MAGIC) + 3 * HEADER_DTYPE.itemsize


def encode_raw(data: np.ndarray) -> bytes:
    data = np.asarray(data)
    if data.ndim == 2:
        data = data[:, :, None]
    if data.ndim != 3 or 0 in data.shape:
        raise ValueError(f"expected a non-empty (h, w, channels) array, got shape {data.shape}")
    height, width, channels = data.shape
    header = np.array([width, height, channels], dtype=HEADER_DTYPE).tobytes()
    return MAGIC + header + np.ascontiguousarray(data, dtype=PIXEL_DTYPE).tobytes()


def decode_raw(buf: bytes, path: Union[str, Path, None] = None) -> np.ndarray:
    """(height, width, channels) float32 array."""
    for offset, (got, want) in enumerate(zip(buf[: len(MAGIC)], MAGIC)):
        if got != want:
            raise FormatError("not a raw channel image (bad magic)", path, offset=offset)
    if len(buf) < HEADER_SIZE:
        raise FormatError(f"truncated header, {len(buf)} of {HEADER_SIZE} bytes", path, offset=len(buf))

    width, height, channels = np.frombuffer(buf, dtype=HEADER_DTYPE, count=3, offset=len(MAGIC))
    for i, (name, value) in enumerate((("width", width), ("height", height), ("channels", channels))):
        if value == 0:
            raise FormatError(f"{name} must be positive", path, offset=len(MAGIC) + i * HEADER_DTYPE.itemsize)

    count = int(width) * int(height) * int(channels)
    end = HEADER_SIZE + count * PIXEL_DTYPE.itemsize
    if len(buf) < end:
        raise FormatError(f"truncated pixel data, expected {end} bytes, got {len(buf)}", path, offset=len(buf))
    if len(buf) > end:
        raise FormatError(f"{len(buf) - end} trailing bytes after pixel data", path, offset=end)
    pixels = np.frombuffer(buf, dtype=PIXEL_DTYPE, count=count, offset=HEADER_SIZE)
    return pixels.reshape(int(height), int(width), int(channels)).astype(np.float32)


def write_raw(path: Union[str, Path], data: np.ndarray) -> None:
    Path(path).write_bytes(encode_raw(data))


def read_raw(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    return decode_raw(path.read_bytes(), path)
