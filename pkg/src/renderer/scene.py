from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from hadacodec import HadacodecError
from spectral import N_SAMPLES, Role, SpectralDomainError, validate_values

MAX_OBJECTS = 8
AXES = {"x": 0, "y": 1, "z": 2}


class SceneError(HadacodecError, ValueError):
    pass


def _vec(values, size: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (size,) or not np.all(np.isfinite(arr)):
        raise SceneError(f"{what} must be {size} finite numbers, got {values!r}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _spectrum(values, role: Role, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (N_SAMPLES,):
        raise SceneError(f"{what}: expected {N_SAMPLES} samples, got shape {arr.shape}")
    try:
        validate_values(arr, role)
    except SpectralDomainError as e:
        raise SceneError(f"{what}: {e}") from e
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Camera:
    position: np.ndarray
    look_at: np.ndarray
    up: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))
    fov: float = 40.0

    def __post_init__(self):
        object.__setattr__(self, "position", _vec(self.position, 3, "camera position"))
        object.__setattr__(self, "look_at", _vec(self.look_at, 3, "camera look_at"))
        object.__setattr__(self, "up", _vec(self.up, 3, "camera up"))
        if not 0 < self.fov < 180:
            raise SceneError(f"camera fov must lie in (0, 180) degrees, got {self.fov}")
        forward = self.look_at - self.position
        if np.linalg.norm(forward) == 0 or np.linalg.norm(np.cross(forward, self.up)) == 0:
            raise SceneError("camera look_at must differ from position and not be parallel to up")


@dataclass(frozen=True)
class Material:
    """Lambertian albedo given as a reflectance spectrum or, for legacy assets, linear RGB."""

    name: str
    reflectance: Optional[np.ndarray] = None
    rgb: Optional[tuple[float, float, float]] = None

    def __post_init__(self):
        if (self.reflectance is None) == (self.rgb is None):
            raise SceneError(f"material {self.name!r} needs exactly one of reflectance or rgb")
        if self.reflectance is not None:
            object.__setattr__(
                self,
                "reflectance",
                _spectrum(self.reflectance, Role.reflectance, f"material {self.name!r}"),
            )
        else:
            rgb = tuple(float(c) for c in self.rgb)
            if len(rgb) != 3 or not all(0.0 <= c <= 1.0 for c in rgb):
                raise SceneError(f"material {self.name!r}: rgb components must lie in [0, 1]")
            object.__setattr__(self, "rgb", rgb)


@dataclass(frozen=True)
class AxisRect:
    """Rectangle perpendicular to `axis` at `offset`; lo/hi bound the two remaining axes in order."""

    name: str
    axis: int
    offset: float
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        if self.axis not in (0, 1, 2):
            raise SceneError(f"{self.name!r}: axis must be 0, 1 or 2, got {self.axis}")
        object.__setattr__(self, "lo", _vec(self.lo, 2, f"{self.name!r} lo"))
        object.__setattr__(self, "hi", _vec(self.hi, 2, f"{self.name!r} hi"))
        if np.any(self.lo >= self.hi):
            raise SceneError(f"{self.name!r}: lo must be below hi on both axes")

    @property
    def in_plane(self) -> tuple[int, int]:
        return tuple(a for a in range(3) if a != self.axis)  # type: ignore[return-value]

    @property
    def area(self) -> float:
        return float(np.prod(self.hi - self.lo))


@dataclass(frozen=True)
class Quad(AxisRect):
    material: str = ""


@dataclass(frozen=True)
class Emitter(AxisRect):
    """One-sided area light emitting along `facing` times the axis direction."""

    spd: np.ndarray = field(default_factory=lambda: np.ones(N_SAMPLES))
    facing: int = -1

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "spd", _spectrum(self.spd, Role.illumination, f"light {self.name!r}"))
        if self.facing not in (-1, 1):
            raise SceneError(f"light {self.name!r}: facing must be -1 or 1")

    @property
    def normal(self) -> np.ndarray:
        n = np.zeros(3)
        n[self.axis] = self.facing
        return n


@dataclass(frozen=True)
class Sphere:
    name: str
    center: np.ndarray
    radius: float
    material: str

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center, 3, f"sphere {self.name!r} center"))
        if not self.radius > 0:
            raise SceneError(f"sphere {self.name!r}: radius must be positive")


@dataclass(frozen=True)
class Box:
    name: str
    lo: np.ndarray
    hi: np.ndarray
    material: str

    def __post_init__(self):
        object.__setattr__(self, "lo", _vec(self.lo, 3, f"box {self.name!r} lo"))
        object.__setattr__(self, "hi", _vec(self.hi, 3, f"box {self.name!r} hi"))
        if np.any(self.lo >= self.hi):
            raise SceneError(f"box {self.name!r}: lo must be below hi on every axis")


@dataclass(frozen=True)
class Scene:
    camera: Camera
    materials: dict[str, Material]
    quads: tuple[Quad, ...] = ()
    spheres: tuple[Sphere, ...] = ()
    boxes: tuple[Box, ...] = ()
    emitters: tuple[Emitter, ...] = ()

    def __post_init__(self):
        for attr in ("quads", "spheres", "boxes", "emitters"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if not self.emitters:
            raise SceneError("a scene needs at least one light")
        if len(self.spheres) + len(self.boxes) > MAX_OBJECTS:
            raise SceneError(f"at most {MAX_OBJECTS} spheres and boxes are supported")
        for name, material in self.materials.items():
            if material.name != name:
                raise SceneError(f"material registered as {name!r} is named {material.name!r}")
        for surface in (*self.quads, *self.spheres, *self.boxes):
            if surface.material not in self.materials:
                raise SceneError(f"{surface.name!r} uses unknown material {surface.material!r}")

    @property
    def material_names(self) -> list[str]:
        return list(self.materials)

    def with_light_scale(self, alpha: float) -> "Scene":
        """Copy with every emitter SPD multiplied by alpha."""
        return replace(self, emitters=tuple(replace(e, spd=e.spd * alpha) for e in self.emitters))

    def with_materials(self, materials: dict[str, Material]) -> "Scene":
        return replace(self, materials=materials)
