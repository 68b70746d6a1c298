"""
Scene files: flat `key = value` camera settings followed by object blocks.

    # comment
    camera.position = 0.5 0.5 -1.4
    camera.look_at = 0.5 0.5 0.5
    camera.up = 0 1 0
    camera.fov = 38

    [material white]
    albedo = flat:0.75

    [material legacy]
    albedo = rgb:0.8,0.2,0.1

    [quad floor]
    axis = y
    offset = 0
    lo = 0 0
    hi = 1 1
    material = white

    [sphere ball]
    center = 0.3 0.2 0.45
    radius = 0.2
    material = white

    [box block]
    lo = 0.55 0 0.5
    hi = 0.85 0.45 0.8
    material = white

    [light ceiling]
    axis = y
    offset = 0.999
    lo = 0.375 0.375
    hi = 0.625 0.625
    facing = -1
    spd = daylight:6500
    scale = 4

Spectral values are one of `flat:v`, `values:v1 ... v47` (the canonical
grid), `gaussian:center,width[,floor,peak]`, `daylight:cct` or
`blackbody:cct`; material albedos may instead be legacy `rgb:r,g,b`.
Quad and light `lo`/`hi` bound the two remaining axes in x, y, z order.
"""

import logging
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np

from colorimetry import blackbody_spd, daylight_spd
from renderer.scene import AXES, Box, Camera, Emitter, Material, Quad, Scene, SceneError, Sphere
from spectral import N_SAMPLES, WAVELENGTHS

from .errors import FormatError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "{:.9g}"
BLOCK_KINDS = ("material", "quad", "sphere", "box", "light")
_REQUIRED = {
    "material": {"albedo"},
    "quad": {"axis", "offset", "lo", "hi", "material"},
    "sphere": {"center", "radius", "material"},
    "box": {"lo", "hi", "material"},
    "light": {"axis", "offset", "lo", "hi", "spd"},
}
_OPTIONAL = {"light": {"facing", "scale"}}
_CAMERA_KEYS = {"camera.position", "camera.look_at", "camera.up", "camera.fov"}
_AXIS_NAMES = {v: k for k, v in AXES.items()}


class _Block:
    def __init__(self, kind: str, name: str, line: int):
        self.kind = kind
        self.name = name
        self.line = line
        self.values: dict[str, tuple[str, int]] = {}


def _floats(text: str, count: Optional[int], where: Callable[[str], FormatError]) -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.replace(",", " ").split()])
    except ValueError:
        raise where(f"expected numbers, got {text!r}") from None
    if count is not None and values.size != count:
        raise where(f"expected {count} numbers, got {values.size}")
    return values


def _spectral_value(text: str, where: Callable[[str], FormatError]) -> np.ndarray:
    kind, _, args = text.partition(":")
    kind = kind.strip().lower()
    if kind == "flat":
        return np.full(N_SAMPLES, _floats(args, 1, where)[0])
    if kind == "values":
        return _floats(args, N_SAMPLES, where)
    if kind == "gaussian":
        params = _floats(args, None, where)
        if params.size not in (2, 4):
            raise where("gaussian takes center,width[,floor,peak]")
        center, width, floor, peak = (*params, 0.0, 1.0) if params.size == 2 else params
        if width <= 0:
            raise where("gaussian width must be positive")
        return floor + (peak - floor) * np.exp(-0.5 * ((WAVELENGTHS - center) / width) ** 2)
    if kind in ("daylight", "blackbody"):
        cct = _floats(args, 1, where)[0]
        spd = daylight_spd(cct) if kind == "daylight" else blackbody_spd(cct)
        return spd / np.max(spd)
    raise where(f"unknown spectral value kind {kind!r}")


def _axis(text: str, where: Callable[[str], FormatError]) -> int:
    text = text.strip().lower()
    if text in AXES:
        return AXES[text]
    raise where(f"axis must be one of x, y, z, got {text!r}")


def _tokenize(text: str, path) -> tuple[dict[str, tuple[str, int]], list[_Block]]:
    header: dict[str, tuple[str, int]] = {}
    blocks: list[_Block] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FormatError("unterminated block header", path, line=number)
            parts = line[1:-1].split()
            if len(parts) != 2 or parts[0] not in BLOCK_KINDS:
                raise FormatError(
                    f"block headers are [<{'|'.join(BLOCK_KINDS)}> <name>], got {line!r}", path, line=number
                )
            blocks.append(_Block(parts[0], parts[1], number))
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise FormatError(f"expected 'key = value', got {line!r}", path, line=number)
        target = blocks[-1].values if blocks else header
        if key in target:
            raise FormatError(f"duplicate key {key!r}", path, line=number)
        target[key] = (value.strip(), number)
    return header, blocks


class _Fields:
    """Typed access to a block's values with line-numbered errors."""

    def __init__(self, block: _Block, path):
        self.block = block
        self.path = path

    def where(self, key: str) -> Callable[[str], FormatError]:
        line = self.block.values[key][1]
        return lambda message: FormatError(message, self.path, line=line)

    def text(self, key: str) -> str:
        return self.block.values[key][0]

    def floats(self, key: str, count: int) -> np.ndarray:
        return _floats(self.text(key), count, self.where(key))

    def number(self, key: str, default: float) -> float:
        if key not in self.block.values:
            return default
        return float(self.floats(key, 1)[0])

    def spectrum(self, key: str) -> np.ndarray:
        return _spectral_value(self.text(key), self.where(key))


def _material(f: _Fields) -> Material:
    value = f.text("albedo")
    if value.lower().startswith("rgb:"):
        rgb = _floats(value[4:], 3, f.where("albedo"))
        return Material(f.block.name, rgb=(rgb[0], rgb[1], rgb[2]))
    return Material(f.block.name, reflectance=f.spectrum("albedo"))


def _rect_args(f: _Fields) -> tuple:
    axis = _axis(f.text("axis"), f.where("axis"))
    return (f.block.name, axis, f.number("offset", 0.0), f.floats("lo", 2), f.floats("hi", 2))


def _check_keys(block: _Block, path) -> None:
    missing = _REQUIRED[block.kind] - set(block.values)
    if missing:
        raise FormatError(f"{block.kind} {block.name!r} is missing {sorted(missing)}", path, line=block.line)
    extra = set(block.values) - _REQUIRED[block.kind] - _OPTIONAL.get(block.kind, set())
    if extra:
        key = min(extra, key=lambda k: block.values[k][1])
        raise FormatError(f"unknown key {key!r} in {block.kind}", path, line=block.values[key][1])


def _camera(header: dict[str, tuple[str, int]], path) -> Camera:
    unknown = set(header) - _CAMERA_KEYS
    if unknown:
        key = min(unknown, key=lambda k: header[k][1])
        raise FormatError(f"unknown setting {key!r}", path, line=header[key][1])
    for key in ("camera.position", "camera.look_at"):
        if key not in header:
            raise FormatError(f"missing {key!r}", path)

    def vec(key: str, size: int) -> np.ndarray:
        value, line = header[key]
        return _floats(value, size, lambda message: FormatError(message, path, line=line))

    args: dict = {"position": vec("camera.position", 3), "look_at": vec("camera.look_at", 3)}
    if "camera.up" in header:
        args["up"] = vec("camera.up", 3)
    if "camera.fov" in header:
        args["fov"] = float(vec("camera.fov", 1)[0])
    try:
        return Camera(**args)
    except SceneError as e:
        raise FormatError(str(e), path, line=header["camera.position"][1]) from e


def parse_scene(text: str, path: Union[str, Path, None] = None) -> Scene:
    header, blocks = _tokenize(text, path)
    camera = _camera(header, path)

    materials: dict[str, Material] = {}
    quads, spheres, boxes, lights = [], [], [], []
    seen: set[tuple[str, str]] = set()
    for block in blocks:
        if (block.kind, block.name) in seen:
            raise FormatError(f"duplicate {block.kind} {block.name!r}", path, line=block.line)
        seen.add((block.kind, block.name))
        _check_keys(block, path)
        f = _Fields(block, path)
        try:
            if block.kind == "material":
                materials[block.name] = _material(f)
            elif block.kind == "quad":
                quads.append(Quad(*_rect_args(f), material=f.text("material")))
            elif block.kind == "sphere":
                spheres.append(
                    Sphere(block.name, f.floats("center", 3), f.number("radius", 0.0), f.text("material"))
                )
            elif block.kind == "box":
                boxes.append(Box(block.name, f.floats("lo", 3), f.floats("hi", 3), f.text("material")))
            else:
                spd = f.spectrum("spd") * f.number("scale", 1.0)
                facing = int(f.number("facing", -1))
                lights.append(Emitter(*_rect_args(f), spd=spd, facing=facing))
        except SceneError as e:
            raise FormatError(str(e), path, line=block.line) from e

    try:
        return Scene(camera, materials, quads=quads, spheres=spheres, boxes=boxes, emitters=lights)
    except SceneError as e:
        raise FormatError(str(e), path) from e


def read_scene(path: Union[str, Path]) -> Scene:
    path = Path(path)
    return parse_scene(path.read_text(encoding="utf-8"), path)


def _fmt(values) -> str:
    return " ".join(FLOAT_FORMAT.format(float(v)) for v in np.atleast_1d(values))


def format_scene(scene: Scene) -> str:
    cam = scene.camera
    lines = [
        f"camera.position = {_fmt(cam.position)}",
        f"camera.look_at = {_fmt(cam.look_at)}",
        f"camera.up = {_fmt(cam.up)}",
        f"camera.fov = {_fmt(cam.fov)}",
    ]
    for name, material in scene.materials.items():
        lines += ["", f"[material {name}]"]
        if material.rgb is not None:
            lines.append("albedo = rgb:" + ",".join(FLOAT_FORMAT.format(c) for c in material.rgb))
        else:
            lines.append(f"albedo = values:{_fmt(material.reflectance)}")
    for quad in scene.quads:
        lines += ["", f"[quad {quad.name}]", *_rect_lines(quad), f"material = {quad.material}"]
    for sphere in scene.spheres:
        lines += [
            "",
            f"[sphere {sphere.name}]",
            f"center = {_fmt(sphere.center)}",
            f"radius = {_fmt(sphere.radius)}",
            f"material = {sphere.material}",
        ]
    for box in scene.boxes:
        lines += [
            "",
            f"[box {box.name}]",
            f"lo = {_fmt(box.lo)}",
            f"hi = {_fmt(box.hi)}",
            f"material = {box.material}",
        ]
    for light in scene.emitters:
        lines += [
            "",
            f"[light {light.name}]",
            *_rect_lines(light),
            f"facing = {light.facing}",
            f"spd = values:{_fmt(light.spd)}",
        ]
    return "\n".join(lines) + "\n"


def _rect_lines(rect) -> list[str]:
    return [
        f"axis = {_AXIS_NAMES[rect.axis]}",
        f"offset = {_fmt(rect.offset)}",
        f"lo = {_fmt(rect.lo)}",
        f"hi = {_fmt(rect.hi)}",
    ]


def write_scene(path: Union[str, Path], scene: Scene) -> None:
    Path(path).write_text(format_scene(scene), encoding="utf-8")
    logger.info(f"wrote scene to {path}")
