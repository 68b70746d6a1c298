import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from codec import CodecWeights, encode
from colorimetry import (
    Y_MAX,
    linear_rgb_to_xyz,
    rgb_of_radiance,
    rgb_of_reflectance,
    xyz_of_reflectance,
)
from config import Settings
from models.render import RenderJob, RenderMode
from upsampler import UpsamplerWeights, upsample

from .geometry import SURFACE_OFFSET, SceneGeometry, camera_rays, cosine_hemisphere, sample_rect
from .image import ChannelImage, RenderStats
from .rng import counter_hash, render_key, uniform
from .scene import Scene, SceneError

logger = logging.getLogger(__name__)

TILE_PIXELS = 256
RR_START_DEPTH = 5
RR_MIN_SURVIVAL = 0.05
THROUGHPUT_CAP = 16.0
MAX_UNBOUNDED_DEPTH = 64

# random dimensions: 2 for the pixel jitter, then per bounce
# light pick, two for the light point, two for the bounce direction
CAMERA_DIMS = 2
DIMS_PER_BOUNCE = 5


@dataclass(frozen=True)
class RenderAssets:
    """Scene assets converted to one channel representation."""

    mode: RenderMode
    albedo: np.ndarray
    emission: np.ndarray
    # albedo luminance from the source assets, identical in every mode
    luminance: np.ndarray

    @property
    def channels(self) -> int:
        return self.albedo.shape[1]

    def shader_slices(self) -> list[slice]:
        """Channel groups shaded together: one wavelength in spectral mode, three channels otherwise."""
        width = 1 if self.mode == RenderMode.spectral else 3
        return [slice(i, i + width) for i in range(0, self.channels, width)]

    @property
    def shader_groups(self) -> int:
        return len(self.shader_slices())

    def block(self, p: int) -> "RenderAssets":
        """The 3-channel slice rendered by latent pass p."""
        cols = slice(3 * p, 3 * p + 3)
        return RenderAssets(self.mode, self.albedo[:, cols], self.emission[:, cols], self.luminance)


@dataclass(frozen=True)
class _Keys:
    paths: np.uint64
    roulette: np.uint64

    @classmethod
    def for_seed(cls, seed: int) -> "_Keys":
        return cls(paths=render_key(seed, "render-paths"), roulette=render_key(seed, "render-roulette"))


def _luminance(scene: Scene) -> np.ndarray:
    lum = []
    for material in scene.materials.values():
        if material.reflectance is not None:
            lum.append(xyz_of_reflectance(material.reflectance)[1] / Y_MAX)
        else:
            lum.append(linear_rgb_to_xyz(np.array(material.rgb))[1])
    return np.array(lum)


def prepare_assets(
    scene: Scene,
    mode: RenderMode,
    codec: Optional[CodecWeights] = None,
    upsampler: Optional[UpsamplerWeights] = None,
) -> RenderAssets:
    """
    Convert albedos and emitter SPDs to the channel representation of `mode`.

    Latent mode encodes every spectral asset once; RGB-only materials go
    through the upsampler. RGB mode projects spectra through the CMFs.
    """
    materials = list(scene.materials.values())
    spds = np.stack([e.spd for e in scene.emitters])
    rgb_only = [m.name for m in materials if m.reflectance is None]

    if mode == RenderMode.spectral:
        if rgb_only:
            raise SceneError(f"spectral mode needs reflectance spectra; RGB-only materials: {rgb_only}")
        albedo = np.stack([m.reflectance for m in materials])
        emission = spds
    elif mode == RenderMode.rgb:
        albedo = np.maximum(
            np.stack(
                [
                    rgb_of_reflectance(m.reflectance) if m.reflectance is not None else np.array(m.rgb)
                    for m in materials
                ]
            ),
            0.0,
        )
        emission = np.maximum(rgb_of_radiance(spds), 0.0)
    else:
        if codec is None:
            raise SceneError("latent mode needs codec weights")
        if rgb_only and upsampler is None:
            raise SceneError(f"RGB-only materials {rgb_only} need an upsampler in latent mode")
        if upsampler is not None and upsampler.k != codec.k:
            raise SceneError(f"upsampler produces k={upsampler.k} codes, codec has k={codec.k}")
        rows = []
        for m in materials:
            if m.reflectance is not None:
                rows.append(encode(codec, m.reflectance))
            else:
                rows.append(upsample(upsampler, np.array(m.rgb)))
        albedo = np.stack(rows)
        emission = encode(codec, spds)

    return RenderAssets(mode=mode, albedo=albedo, emission=emission, luminance=_luminance(scene))


def _hash_vertex(h: np.ndarray, prim: np.ndarray, point: np.ndarray) -> np.ndarray:
    bits = np.ascontiguousarray(point).view(np.uint64)
    return counter_hash(h, prim.astype(np.uint64), bits[:, 0], bits[:, 1], bits[:, 2])


def _direct_light(
    geometry: SceneGeometry,
    point: np.ndarray,
    normal: np.ndarray,
    pix: np.ndarray,
    samp: np.ndarray,
    key: np.uint64,
    dim: int,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Next-event estimate towards one uniformly chosen light.

    Returns the scalar weight (cos.cos'/r^2 * area * lights / pi, zero when
    occluded or back-facing) and the chosen light per ray.
    """
    emitters = geometry.scene.emitters
    count = len(emitters)
    pick = np.minimum((uniform(key, pix, samp, dim) * count).astype(np.int64), count - 1)
    u1 = uniform(key, pix, samp, dim + 1)
    u2 = uniform(key, pix, samp, dim + 2)

    target = np.empty_like(point)
    light_normal = np.empty_like(point)
    area = np.empty(len(point))
    for j, emitter in enumerate(emitters):
        rows = pick == j
        target[rows] = sample_rect(emitter, u1[rows], u2[rows])
        light_normal[rows] = emitter.normal
        area[rows] = emitter.area

    origin = point + normal * SURFACE_OFFSET
    to_light = target - origin
    dist = np.linalg.norm(to_light, axis=1)
    wi = to_light / dist[:, None]
    cos_surface = np.einsum("ij,ij->i", normal, wi)
    cos_light = -np.einsum("ij,ij->i", light_normal, wi)
    facing = (cos_surface > 0) & (cos_light > 0)

    weight = np.zeros(len(point))
    if np.any(facing):
        rows = np.flatnonzero(facing)
        visible = ~geometry.occluded(origin[rows], wi[rows], dist[rows])
        rows = rows[visible]
        weight[rows] = cos_surface[rows] * cos_light[rows] / dist[rows] ** 2 * area[rows] * count / np.pi
    return weight, pick


def roulette(
    throughput: np.ndarray, lum: np.ndarray, u: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Russian roulette on the source-asset luminance of each path.

    Returns the surviving rows and their reweighted throughput and luminance.
    Survival never drops below RR_MIN_SURVIVAL and every throughput channel is
    capped at THROUGHPUT_CAP, which bounds latent paths whose code albedos
    exceed one.
    """
    survival = np.clip(lum, RR_MIN_SURVIVAL, 1.0)
    alive = np.flatnonzero(u < survival)
    survival = survival[alive]
    throughput = np.minimum(throughput[alive] / survival[:, None], THROUGHPUT_CAP)
    return alive, throughput, lum[alive] / survival


def _trace_pixels(
    geometry: SceneGeometry, assets: RenderAssets, job: RenderJob, keys: _Keys, pixels: np.ndarray
) -> tuple[np.ndarray, np.ndarray, int, int]:
    spp = job.spp
    pix = np.repeat(pixels, spp).astype(np.uint64)
    samp = np.tile(np.arange(spp, dtype=np.uint64), len(pixels))
    x = np.repeat(pixels % job.width, spp).astype(np.float64)
    y = np.repeat(pixels // job.width, spp).astype(np.float64)
    if job.jitter:
        x += uniform(keys.paths, pix, samp, 0)
        y += uniform(keys.paths, pix, samp, 1)
    else:
        x += 0.5
        y += 0.5
    o, d = camera_rays(geometry.scene.camera, job.width, job.height, x, y)

    n_rays = len(pix)
    radiance = np.zeros((n_rays, assets.channels))
    hashes = np.zeros(n_rays, dtype=np.uint64)
    rays = np.arange(n_rays)
    throughput = np.ones((n_rays, assets.channels))
    lum = np.ones(n_rays)
    light_normals = np.stack([e.normal for e in geometry.scene.emitters])
    events = 0
    evaluations = 0
    slices = assets.shader_slices()
    limit = MAX_UNBOUNDED_DEPTH if job.unbounded else job.max_depth

    for depth in range(limit):
        if rays.size == 0:
            break
        hit = geometry.intersect(o, d)
        emitter = np.where(hit.found, geometry.emitter[np.maximum(hit.prim, 0)], -1)

        if depth == 0:
            seen = np.flatnonzero(emitter >= 0)
            front = np.einsum("ij,ij->i", d[seen], light_normals[emitter[seen]]) < 0
            seen = seen[front]
            radiance[rays[seen]] += throughput[seen] * assets.emission[emitter[seen]]

        keep = hit.found & (emitter < 0)
        rays, pix, samp = rays[keep], pix[keep], samp[keep]
        throughput, lum = throughput[keep], lum[keep]
        point, normal, prim = hit.point[keep], hit.normal[keep], hit.prim[keep]
        if rays.size == 0:
            break
        events += rays.size
        hashes[rays] = _hash_vertex(hashes[rays], prim, point)

        mat = geometry.material[prim]
        albedo = np.empty_like(throughput)
        for cols in slices:
            albedo[:, cols] = assets.albedo[mat, cols]
            evaluations += rays.size
        dim = CAMERA_DIMS + depth * DIMS_PER_BOUNCE
        weight, light = _direct_light(geometry, point, normal, pix, samp, keys.paths, dim)
        lit = np.flatnonzero(weight > 0)
        radiance[rays[lit]] += (
            throughput[lit] * albedo[lit] * weight[lit, None] * assets.emission[light[lit]]
        )
        if depth + 1 == limit:
            break

        u1 = uniform(keys.paths, pix, samp, dim + 3)
        u2 = uniform(keys.paths, pix, samp, dim + 4)
        d = cosine_hemisphere(normal, u1, u2)
        o = point + normal * SURFACE_OFFSET
        throughput = throughput * albedo
        lum = lum * assets.luminance[mat]

        if job.unbounded and depth + 1 >= RR_START_DEPTH:
            alive, throughput, lum = roulette(throughput, lum, uniform(keys.roulette, pix, samp, depth))
            rays, pix, samp, o, d = rays[alive], pix[alive], samp[alive], o[alive], d[alive]

    n_pix = len(pixels)
    pixel_radiance = radiance.reshape(n_pix, spp, -1).sum(axis=1) / spp
    pixel_hash = np.bitwise_xor.reduce(hashes.reshape(n_pix, spp), axis=1)
    return pixel_radiance, pixel_hash, events, evaluations


def render_assets(
    scene: Scene, assets: RenderAssets, job: RenderJob, workers: Optional[int] = None
) -> ChannelImage:
    """Trace `job` with already converted assets; tiles run on a thread pool."""
    geometry = SceneGeometry(scene)
    keys = _Keys.for_seed(job.seed)
    n_pix = job.width * job.height
    tiles = np.array_split(np.arange(n_pix, dtype=np.int64), max(1, math.ceil(n_pix / TILE_PIXELS)))
    workers = workers or Settings().worker_count()

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda tile: _trace_pixels(geometry, assets, job, keys, tile), tiles))

    data = np.concatenate([r[0] for r in results]).reshape(job.height, job.width, assets.channels)
    path_hash = np.concatenate([r[1] for r in results]).reshape(job.height, job.width)
    stats = RenderStats(
        shading_events=sum(r[2] for r in results), shading_evaluations=sum(r[3] for r in results)
    )
    return ChannelImage(
        data=data, mode=assets.mode, seed=job.seed, spp=job.spp, path_hash=path_hash, stats=stats
    )


def render(
    scene: Scene,
    job: RenderJob,
    codec: Optional[CodecWeights] = None,
    upsampler: Optional[UpsamplerWeights] = None,
    workers: Optional[int] = None,
) -> ChannelImage:
    """
    Path-trace `scene` in the job's mode.

    Lambertian surfaces with next-event estimation; every pixel sample draws
    from a counter-based stream keyed by (seed, pixel, sample), so all modes
    and passes trace the same geometric paths for the same seed.
    """
    assets = prepare_assets(scene, job.mode, codec, upsampler)
    logger.info(
        f"rendering {job.width}x{job.height} {job.mode.value} ({assets.channels} channels), "
        f"{job.spp} spp, depth {job.max_depth}, seed {job.seed}"
    )
    return render_assets(scene, assets, job, workers)


def render_latent_multipass(
    scene: Scene,
    job: RenderJob,
    codec: CodecWeights,
    upsampler: Optional[UpsamplerWeights] = None,
    workers: Optional[int] = None,
) -> ChannelImage:
    """
    Render the latent image as k/3 independent RGB passes with the same seed,
    pass p carrying block p of every asset's code, and concatenate the outputs.
    """
    assets = prepare_assets(scene, RenderMode.latent, codec, upsampler)
    if assets.channels != codec.k:
        raise SceneError(f"assets carry {assets.channels} channels, codec has k={codec.k}")
    job = job.model_copy(update={"mode": RenderMode.latent})

    passes = []
    for p in range(codec.blocks):
        logger.info(f"latent pass {p + 1}/{codec.blocks}")
        passes.append(render_assets(scene, assets.block(p), job, workers))

    for other in passes[1:]:
        if not np.array_equal(other.path_hash, passes[0].path_hash):
            raise SceneError("latent passes traced different paths")
    stats = passes[0].stats
    for other in passes[1:]:
        stats = stats + other.stats
    return ChannelImage(
        data=np.concatenate([p.data for p in passes], axis=-1),
        mode=RenderMode.latent,
        seed=job.seed,
        spp=job.spp,
        path_hash=passes[0].path_hash,
        stats=stats,
    )
