"""
Run config files: one `key = value` per line, `#` starts a comment.

Keys are `section.field` with the sections of `RunConfig` (loss, train,
upsampler, dataset). A bare field name is accepted when exactly one section
has it, so `lambda_e2e = 0.5` and `k = 9` work while `lr` must be written as
`train.lr` or `upsampler.lr`.
"""

import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from models.run import RunConfig

from .errors import FormatError

logger = logging.getLogger(__name__)


def _resolve(key: str, path, line: int) -> tuple[str, str]:
    sections = RunConfig.sections()
    section, dot, name = key.partition(".")
    if dot:
        if section not in sections:
            raise FormatError(f"unknown section {section!r} (expected one of {sorted(sections)})", path, line)
        if name not in sections[section].model_fields:
            raise FormatError(f"unknown key {key!r}", path, line)
        return section, name
    owners = [s for s, model in sections.items() if key in model.model_fields]
    if not owners:
        raise FormatError(f"unknown key {key!r}", path, line)
    if len(owners) > 1:
        choices = " or ".join(f"{s}.{key}" for s in owners)
        raise FormatError(f"ambiguous key {key!r}, write {choices}", path, line)
    return owners[0], key


def parse_config(text: str, path: Union[str, Path, None] = None) -> RunConfig:
    values: dict[str, dict[str, str]] = {}
    lines: dict[tuple[str, str], int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not key:
            raise FormatError(f"expected 'key = value', got {raw.strip()!r}", path, number)
        if not value:
            raise FormatError(f"missing value for {key!r}", path, number)
        section, name = _resolve(key, path, number)
        if (section, name) in lines:
            raise FormatError(
                f"{section}.{name} already set on line {lines[section, name]}", path, number
            )
        lines[section, name] = number
        values.setdefault(section, {})[name] = value

    sections = RunConfig.sections()
    parsed = {}
    for section, fields in values.items():
        try:
            parsed[section] = sections[section].model_validate(fields)
        except ValidationError as e:
            first = e.errors()[0]
            name = str(first["loc"][0]) if first["loc"] else ""
            line = lines.get((section, name), min(lines[section, f] for f in fields))
            raise FormatError(f"{section}.{name}: {first['msg']}" if name else first["msg"], path, line) from e
    logger.debug(f"config {path or '<text>'}: {sorted(f'{s}.{f}' for s, f in lines)}")
    return RunConfig(**parsed)


def read_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), path)


def format_config(cfg: RunConfig) -> str:
    out = []
    for section in RunConfig.sections():
        out.append(f"# {section}")
        for name, value in getattr(cfg, section).model_dump(mode="json").items():
            if value is None:
                continue
            out.append(f"{section}.{name} = {value}")
        out.append("")
    return "\n".join(out)


def write_config(path: Union[str, Path], cfg: RunConfig) -> None:
    Path(path).write_text(format_config(cfg), encoding="utf-8")
