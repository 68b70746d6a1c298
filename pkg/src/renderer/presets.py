from typing import Literal

import numpy as np

from colorimetry import daylight_spd
from spectral import WAVELENGTHS

from .scene import Box, Camera, Emitter, Material, Quad, Scene, SceneError, Sphere

SceneKind = Literal["broadband", "narrowband", "colorchecker"]
SCENE_KINDS: tuple[str, ...] = ("broadband", "narrowband", "colorchecker")

LIGHT_SIZE = 0.25
LIGHT_HEIGHT = 0.999
NARROWBAND_PEAKS = ((450.0, 10.0, 1.0), (540.0, 8.0, 0.6), (610.0, 10.0, 0.9))


def gaussian_reflectance(center: float, width: float, floor: float = 0.05, peak: float = 0.8) -> np.ndarray:
    return floor + (peak - floor) * np.exp(-0.5 * ((WAVELENGTHS - center) / width) ** 2)


def logistic_reflectance(edge: float, slope: float, floor: float = 0.05, peak: float = 0.8) -> np.ndarray:
    """Rising (slope > 0) or falling (slope < 0) step at `edge` nm."""
    return floor + (peak - floor) / (1.0 + np.exp(-(WAVELENGTHS - edge) / slope))


def unit_peak_spd(values: np.ndarray) -> np.ndarray:
    return values / np.max(values)


def narrowband_spd(peaks=NARROWBAND_PEAKS) -> np.ndarray:
    spd = sum(a * np.exp(-0.5 * ((WAVELENGTHS - c) / s) ** 2) for c, s, a in peaks)
    return unit_peak_spd(np.asarray(spd))


def _walls(left: str, right: str) -> tuple[Quad, ...]:
    unit = ((0.0, 0.0), (1.0, 1.0))
    return (
        Quad("floor", 1, 0.0, *unit, material="white"),
        Quad("ceiling", 1, 1.0, *unit, material="white"),
        Quad("back", 2, 1.0, *unit, material="white"),
        Quad("left", 0, 0.0, *unit, material=left),
        Quad("right", 0, 1.0, *unit, material=right),
    )


def _ceiling_light(spd: np.ndarray, intensity: float) -> Emitter:
    lo = 0.5 - LIGHT_SIZE / 2
    hi = 0.5 + LIGHT_SIZE / 2
    return Emitter("ceiling-light", 1, LIGHT_HEIGHT, (lo, lo), (hi, hi), spd=spd * intensity, facing=-1)


def _camera() -> Camera:
    return Camera(position=(0.5, 0.5, -1.4), look_at=(0.5, 0.5, 0.5), fov=38.0)


def _base_materials() -> dict[str, Material]:
    return {
        "white": Material("white", reflectance=np.full(len(WAVELENGTHS), 0.75)),
        "red": Material("red", reflectance=logistic_reflectance(600.0, 12.0)),
        "green": Material("green", reflectance=gaussian_reflectance(535.0, 35.0, peak=0.6)),
        "blue": Material("blue", reflectance=gaussian_reflectance(460.0, 30.0, peak=0.7)),
        "yellow": Material("yellow", reflectance=logistic_reflectance(510.0, 10.0, peak=0.85)),
    }


def cornell_scene(kind: SceneKind = "broadband", intensity: float = 4.0) -> Scene:
    """
    Cornell-box reference scenes in the unit cube, open towards the camera.

    `broadband` and `narrowband` share geometry (red/green walls, a blue
    sphere and a yellow box) and differ in the ceiling light; `colorchecker`
    replaces the objects with eight hue-swept spheres under daylight.
    """
    if kind not in SCENE_KINDS:
        raise SceneError(f"unknown reference scene {kind!r}; expected one of {SCENE_KINDS}")
    materials = _base_materials()
    spd = narrowband_spd() if kind == "narrowband" else unit_peak_spd(daylight_spd(6500.0))
    light = _ceiling_light(spd, intensity)

    if kind == "colorchecker":
        spheres = []
        for i, center in enumerate(np.linspace(420.0, 680.0, 8)):
            name = f"patch-{i}"
            materials[name] = Material(name, reflectance=gaussian_reflectance(center, 25.0, peak=0.85))
            row, col = divmod(i, 4)
            spheres.append(Sphere(name, (0.17 + 0.22 * col, 0.12 + 0.3 * row, 0.65), 0.1, name))
        return Scene(_camera(), materials, quads=_walls("red", "green"), spheres=spheres, emitters=(light,))

    return Scene(
        _camera(),
        materials,
        quads=_walls("red", "green"),
        spheres=(Sphere("ball", (0.3, 0.2, 0.45), 0.2, "blue"),),
        boxes=(Box("block", (0.55, 0.0, 0.5), (0.85, 0.45, 0.8), "yellow"),),
        emitters=(light,),
    )
