from dataclasses import dataclass

import numpy as np

from .scene import AxisRect, Box, Camera, Scene, Sphere

T_MIN = 1e-7
SURFACE_OFFSET = 1e-6


@dataclass
class Hit:
    t: np.ndarray
    prim: np.ndarray
    point: np.ndarray
    normal: np.ndarray

    @property
    def found(self) -> np.ndarray:
        return self.prim >= 0


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _rect_t(o: np.ndarray, d: np.ndarray, rect: AxisRect) -> np.ndarray:
    u, v = rect.in_plane
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (rect.offset - o[:, rect.axis]) / d[:, rect.axis]
        pu = o[:, u] + t * d[:, u]
        pv = o[:, v] + t * d[:, v]
    inside = (pu >= rect.lo[0]) & (pu <= rect.hi[0]) & (pv >= rect.lo[1]) & (pv <= rect.hi[1])
    ok = (t > T_MIN) & inside
    return np.where(ok, t, np.inf)


def _sphere_t(o: np.ndarray, d: np.ndarray, sphere: Sphere) -> np.ndarray:
    oc = o - sphere.center
    b = np.einsum("ij,ij->i", oc, d)
    c = np.einsum("ij,ij->i", oc, oc) - sphere.radius**2
    disc = b * b - c
    root = np.sqrt(np.maximum(disc, 0.0))
    near, far = -b - root, -b + root
    t = np.where(near > T_MIN, near, np.where(far > T_MIN, far, np.inf))
    return np.where(disc >= 0, t, np.inf)


def _box_t(o: np.ndarray, d: np.ndarray, box: Box) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = (box.lo - o) / d
        t1 = (box.hi - o) / d
    t_enter = np.max(np.fmin(t0, t1), axis=1)
    t_exit = np.min(np.fmax(t0, t1), axis=1)
    t = np.where(t_enter > T_MIN, t_enter, t_exit)
    return np.where((t_exit >= t_enter) & (t > T_MIN), t, np.inf)


def _box_normal(p: np.ndarray, box: Box) -> np.ndarray:
    center = 0.5 * (box.lo + box.hi)
    rel = (p - center) / (0.5 * (box.hi - box.lo))
    axis = np.argmax(np.abs(rel), axis=1)
    n = np.zeros_like(p)
    rows = np.arange(len(p))
    n[rows, axis] = np.sign(rel[rows, axis])
    return n


class SceneGeometry:
    """
    Flattened primitive list: quads, then lights, then spheres, then boxes.

    `material[i]` indexes the scene's material order (-1 for lights) and
    `emitter[i]` the light order (-1 for surfaces).
    """

    def __init__(self, scene: Scene):
        self.scene = scene
        names = scene.material_names
        self.prims: list = [*scene.quads, *scene.emitters, *scene.spheres, *scene.boxes]
        n_quads, n_lights = len(scene.quads), len(scene.emitters)
        lights = range(n_quads, n_quads + n_lights)
        self.material = np.array(
            [-1 if i in lights else names.index(p.material) for i, p in enumerate(self.prims)],
            dtype=np.int64,
        )
        self.emitter = np.full(len(self.prims), -1, dtype=np.int64)
        self.emitter[n_quads : n_quads + n_lights] = np.arange(n_lights)

    def _t(self, o: np.ndarray, d: np.ndarray, prim) -> np.ndarray:
        if isinstance(prim, AxisRect):
            return _rect_t(o, d, prim)
        if isinstance(prim, Sphere):
            return _sphere_t(o, d, prim)
        return _box_t(o, d, prim)

    def _normal(self, p: np.ndarray, prim) -> np.ndarray:
        if isinstance(prim, AxisRect):
            n = np.zeros_like(p)
            n[:, prim.axis] = 1.0
            return n
        if isinstance(prim, Sphere):
            return (p - prim.center) / prim.radius
        return _box_normal(p, prim)

    def closest_t(self, o: np.ndarray, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        t_best = np.full(len(o), np.inf)
        prim_best = np.full(len(o), -1, dtype=np.int64)
        for i, prim in enumerate(self.prims):
            t = self._t(o, d, prim)
            closer = t < t_best
            t_best[closer] = t[closer]
            prim_best[closer] = i
        return t_best, prim_best

    def intersect(self, o: np.ndarray, d: np.ndarray) -> Hit:
        """Closest hit per ray; the normal is flipped to face the incoming ray."""
        t, prim = self.closest_t(o, d)
        found = prim >= 0
        point = o + np.where(found, t, 0.0)[:, None] * d
        normal = np.zeros_like(o)
        for i in np.unique(prim[found]):
            rows = prim == i
            normal[rows] = self._normal(point[rows], self.prims[i])
        facing_away = np.einsum("ij,ij->i", normal, d) > 0
        normal[facing_away] *= -1.0
        return Hit(t=t, prim=prim, point=point, normal=normal)

    def occluded(self, o: np.ndarray, d: np.ndarray, dist: np.ndarray) -> np.ndarray:
        t, _ = self.closest_t(o, d)
        return t < dist * (1.0 - 1e-6)


def camera_rays(
    camera: Camera, width: int, height: int, px: np.ndarray, py: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Pinhole rays through image-plane positions (px, py), y growing downwards."""
    forward = _normalize(camera.look_at - camera.position)
    right = _normalize(np.cross(forward, camera.up))
    up = np.cross(right, forward)
    half = np.tan(np.radians(camera.fov) / 2.0)
    aspect = width / height
    sx = (2.0 * px / width - 1.0) * half * aspect
    sy = (1.0 - 2.0 * py / height) * half
    d = _normalize(forward + sx[:, None] * right + sy[:, None] * up)
    o = np.broadcast_to(camera.position, d.shape).copy()
    return o, d


def onb_from_normal(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Branchless orthonormal tangent frame for unit normals (Duff et al.)."""
    sign = np.where(n[:, 2] >= 0, 1.0, -1.0)
    a = -1.0 / (sign + n[:, 2])
    b = n[:, 0] * n[:, 1] * a
    t = np.stack([1.0 + sign * n[:, 0] ** 2 * a, sign * b, -sign * n[:, 0]], axis=1)
    s = np.stack([b, sign + n[:, 1] ** 2 * a, -n[:, 1]], axis=1)
    return t, s


def cosine_hemisphere(n: np.ndarray, u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    r = np.sqrt(u1)
    phi = 2.0 * np.pi * u2
    t, s = onb_from_normal(n)
    local_z = np.sqrt(np.maximum(0.0, 1.0 - u1))
    return _normalize(
        (r * np.cos(phi))[:, None] * t + (r * np.sin(phi))[:, None] * s + local_z[:, None] * n
    )


def sample_rect(rect: AxisRect, u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    u, v = rect.in_plane
    p = np.empty((len(u1), 3))
    p[:, rect.axis] = rect.offset
    p[:, u] = rect.lo[0] + u1 * (rect.hi[0] - rect.lo[0])
    p[:, v] = rect.lo[1] + u2 * (rect.hi[1] - rect.lo[1])
    return p
