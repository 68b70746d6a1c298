"""Binary 8-bit PPM (P6)."""

import re
from pathlib import Path
from typing import Union

import numpy as np

from .errors import FormatError

PPM_MAGIC = b"P6"
_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n)*(\S+)")


def encode_ppm(rgb: np.ndarray) -> bytes:
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError(f"expected an (h, w, 3) uint8 image, got {rgb.dtype} {rgb.shape}")
    height, width, _ = rgb.shape
    header = b"%s\n%d %d\n255\n" % (PPM_MAGIC, width, height)
    return header + np.ascontiguousarray(rgb).tobytes()


def decode_ppm(buf: bytes, path: Union[str, Path, None] = None) -> np.ndarray:
    """(height, width, 3) uint8 image; comments in the header are skipped."""
    if not buf.startswith(PPM_MAGIC):
        raise FormatError("not a binary PPM (expected P6)", path, offset=0)
    pos = len(PPM_MAGIC)
    fields = []
    for name in ("width", "height", "maxval"):
        match = _TOKEN.match(buf, pos)
        if match is None:
            raise FormatError(f"missing {name}", path, offset=pos)
        token = match.group(1)
        if not token.isdigit() or int(token) == 0:
            raise FormatError(f"{name} must be a positive integer, got {token!r}", path, offset=match.start(1))
        fields.append(int(token))
        pos = match.end(1)
    width, height, maxval = fields
    if maxval > 255:
        raise FormatError(f"only 8-bit PPM is supported, maxval is {maxval}", path, offset=pos)
    if pos >= len(buf) or not buf[pos : pos + 1].isspace():
        raise FormatError("expected one whitespace byte before pixel data", path, offset=pos)
    start = pos + 1

    end = start + width * height * 3
    if len(buf) < end:
        raise FormatError(f"truncated pixel data, expected {end} bytes, got {len(buf)}", path, offset=len(buf))
    pixels = np.frombuffer(buf, dtype=np.uint8, count=width * height * 3, offset=start)
    rgb = pixels.reshape(height, width, 3)
    if maxval != 255:
        rgb = np.round(rgb.astype(np.float64) * (255.0 / maxval)).clip(0, 255)
    return rgb.astype(np.uint8)


def write_ppm(path: Union[str, Path], rgb: np.ndarray) -> None:
    Path(path).write_bytes(encode_ppm(rgb))


def read_ppm(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    return decode_ppm(path.read_bytes(), path)
