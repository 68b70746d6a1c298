from pathlib import Path
from typing import Optional, Union

from hadacodec import HadacodecError


class FormatError(HadacodecError, ValueError):
    """Malformed input file; carries the position of the first offending item."""

    def __init__(
        self,
        message: str,
        path: Union[str, Path, None] = None,
        line: Optional[int] = None,
        offset: Optional[int] = None,
    ):
        self.path = None if path is None else Path(path)
        self.line = line
        self.offset = offset
        where = []
        if self.path is not None:
            where.append(str(self.path))
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{': '.join([', '.join(where), message]) if where else message}")
