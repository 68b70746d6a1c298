import numpy as np
import pytest
from pydantic import ValidationError

from codec import CodecWeights
from models.render import RenderJob, RenderMode
from renderer import (
    ChannelImage,
    Emitter,
    ImageError,
    Material,
    Quad,
    Scene,
    SceneError,
    Sphere,
    cornell_scene,
    decode_image,
    error_map,
    image_to_srgb,
    prepare_assets,
    render,
    render_latent_multipass,
)
from renderer.geometry import SceneGeometry, camera_rays, cosine_hemisphere
from renderer.rng import render_key, uniform
from renderer.tracer import RR_MIN_SURVIVAL, THROUGHPUT_CAP, RenderAssets, render_assets, roulette
from renderer.scene import Camera
from spectral import N_SAMPLES
from upsampler import UpsamplerWeights


@pytest.fixture
def codec():
    return CodecWeights.initialize(6, seed=1)


@pytest.fixture
def scene():
    return cornell_scene("broadband")


def small_job(**overrides) -> RenderJob:
    args = {"width": 12, "height": 10, "spp": 2, "max_depth": 3, "seed": 5}
    return RenderJob(**{**args, **overrides})


def corner_form_factor(x: float, y: float) -> float:
    """Point-to-parallel-rectangle form factor with the point under one corner."""
    ax = x / np.sqrt(1 + x**2)
    ay = y / np.sqrt(1 + y**2)
    return (ax * np.arctan(y / np.sqrt(1 + x**2)) + ay * np.arctan(x / np.sqrt(1 + y**2))) / (2 * np.pi)


def test_uniform_stream_properties():
    key = render_key(3, "render-paths")
    pix = np.arange(1000, dtype=np.uint64)
    samp = np.zeros(1000, dtype=np.uint64)
    u = uniform(key, pix, samp, 0)
    assert np.all((u >= 0) & (u < 1))
    assert abs(u.mean() - 0.5) < 0.05
    np.testing.assert_array_equal(u, uniform(key, pix, samp, 0))
    assert not np.array_equal(u, uniform(key, pix, samp, 1))
    assert not np.array_equal(u, uniform(render_key(4, "render-paths"), pix, samp, 0))


def test_camera_center_ray_looks_at_target():
    camera = Camera(position=(0, 0, -2), look_at=(0, 0, 0), fov=60)
    o, d = camera_rays(camera, 4, 4, np.array([2.0]), np.array([2.0]))
    np.testing.assert_allclose(o[0], [0, 0, -2])
    np.testing.assert_allclose(d[0], [0, 0, 1], atol=1e-15)


def test_intersections(scene):
    geometry = SceneGeometry(scene)
    # straight down from above the sphere hits its top
    o = np.array([[0.3, 0.9, 0.45]])
    d = np.array([[0.0, -1.0, 0.0]])
    hit = geometry.intersect(o, d)
    assert geometry.prims[hit.prim[0]].name == "ball"
    np.testing.assert_allclose(hit.point[0], [0.3, 0.4, 0.45], atol=1e-12)
    np.testing.assert_allclose(hit.normal[0], [0, 1, 0], atol=1e-12)
    # into the box from the side
    hit = geometry.intersect(np.array([[0.95, 0.2, 0.65]]), np.array([[-1.0, 0.0, 0.0]]))
    assert geometry.prims[hit.prim[0]].name == "block"
    np.testing.assert_allclose(hit.normal[0], [1, 0, 0])
    # out of the open front
    hit = geometry.intersect(np.array([[0.5, 0.5, 0.5]]), np.array([[0.0, 0.0, -1.0]]))
    assert not hit.found[0]


def test_cosine_hemisphere_stays_above_surface():
    rng = np.random.default_rng(0)
    n = rng.normal(size=(500, 3))
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    d = cosine_hemisphere(n, rng.random(500), rng.random(500))
    np.testing.assert_allclose(np.linalg.norm(d, axis=1), 1.0)
    assert np.all(np.einsum("ij,ij->i", d, n) >= 0)


def test_direct_lighting_matches_analytic_form_factor():
    albedo, half, height = 0.5, 0.25, 1.0
    scene = Scene(
        camera=Camera(position=(0, 0.5, 0), look_at=(0, 0, 0), up=(0, 0, 1), fov=1.0),
        materials={"grey": Material("grey", reflectance=np.full(N_SAMPLES, albedo))},
        quads=(Quad("floor", 1, 0.0, (-5, -5), (5, 5), material="grey"),),
        emitters=(Emitter("light", 1, height, (-half, -half), (half, half), spd=np.ones(N_SAMPLES)),),
    )
    job = RenderJob(width=1, height=1, spp=4096, max_depth=1, seed=0, jitter=False)
    image = render(scene, job, workers=1)
    expected = albedo * 4 * corner_form_factor(half / height, half / height)
    np.testing.assert_allclose(image.data[0, 0], expected, rtol=5e-3)


def test_black_albedos_leave_only_direct_emitter_pixels(scene):
    black = {name: Material(name, reflectance=np.zeros(N_SAMPLES)) for name in scene.materials}
    image = render(scene.with_materials(black), small_job(width=24, height=20), workers=1)
    spd = scene.emitters[0].spd
    lit = np.any(image.data > 0, axis=-1)
    assert 0 < lit.sum() < lit.size
    scale = image.data[lit].max(axis=-1) / spd.max()
    np.testing.assert_allclose(image.data[lit], np.outer(scale, spd), rtol=1e-12)


@pytest.mark.parametrize("mode", list(RenderMode))
def test_light_scale_is_linear(scene, codec, mode):
    job = small_job(mode=mode)
    base = render(scene, job, codec=codec, workers=1)
    scaled = render(scene.with_light_scale(2.5), job, codec=codec, workers=1)
    np.testing.assert_allclose(scaled.data, 2.5 * base.data, rtol=1e-10)
    assert np.all(base.data >= 0)


def test_modes_trace_identical_paths(scene, codec):
    job = small_job(max_depth=-1, spp=3)
    spectral = render(scene, job.model_copy(update={"mode": RenderMode.spectral}), workers=1)
    rgb = render(scene, job.model_copy(update={"mode": RenderMode.rgb}), workers=1)
    latent = render(scene, job.model_copy(update={"mode": RenderMode.latent}), codec=codec, workers=1)
    multipass = render_latent_multipass(scene, job, codec, workers=1)
    np.testing.assert_array_equal(spectral.path_hash, rgb.path_hash)
    np.testing.assert_array_equal(spectral.path_hash, latent.path_hash)
    np.testing.assert_array_equal(spectral.path_hash, multipass.path_hash)
    assert len(np.unique(spectral.path_hash)) > 1


def test_multipass_equals_single_latent_render(scene, codec):
    job = small_job(mode=RenderMode.latent, width=16, height=16, spp=4)
    single = render(scene, job, codec=codec, workers=2)
    multi = render_latent_multipass(scene, job, codec, workers=3)
    assert multi.channels == 6
    assert multi.stats.passes == 2
    assert np.max(np.abs(single.data - multi.data)) <= 1e-6


def test_swapping_code_blocks_swaps_pass_outputs(scene, codec):
    swapped = CodecWeights(
        np.concatenate([codec.raw_enc[3:], codec.raw_enc[:3]]),
        np.concatenate([codec.raw_dec[:, 3:], codec.raw_dec[:, :3]], axis=1),
        beta=codec.beta,
    )
    job = small_job()
    base = render_latent_multipass(scene, job, codec, workers=1)
    other = render_latent_multipass(scene, job, swapped, workers=1)
    np.testing.assert_allclose(other.data[..., :3], base.data[..., 3:], rtol=1e-12)
    np.testing.assert_allclose(other.data[..., 3:], base.data[..., :3], rtol=1e-12)


def test_render_is_deterministic_across_thread_counts(scene):
    job = small_job(width=20, height=18, max_depth=-1)
    a = render(scene, job, workers=1)
    b = render(scene, job, workers=4)
    np.testing.assert_array_equal(a.data, b.data)
    np.testing.assert_array_equal(a.path_hash, b.path_hash)
    c = render(scene, job.model_copy(update={"seed": 6}), workers=1)
    assert not np.array_equal(a.data, c.data)


def test_shading_counters_give_pass_reduction(scene, codec):
    job = small_job()
    spectral = render(scene, job, workers=1)
    latent = render_latent_multipass(scene, job, codec, workers=1)
    assert spectral.stats.shading_events * 2 == latent.stats.shading_events
    ratio = spectral.shading_evaluations / latent.shading_evaluations
    assert ratio == pytest.approx(N_SAMPLES / 2)


def test_unbounded_depth_is_stable(scene):
    low = render(scene, small_job(width=16, height=16, spp=4, max_depth=-1), workers=2)
    high = render(scene, small_job(width=16, height=16, spp=8, max_depth=-1), workers=2)
    assert np.all(np.isfinite(high.data))
    assert high.data.mean() == pytest.approx(low.data.mean(), rel=0.15)
    bounded = render(scene, small_job(width=16, height=16, spp=8, max_depth=1), workers=2)
    assert high.data.mean() > bounded.data.mean()


def test_rgb_assets_need_an_upsampler_in_latent_mode(scene, codec):
    materials = dict(scene.materials)
    materials["white"] = Material("white", rgb=(0.7, 0.7, 0.7))
    legacy = scene.with_materials(materials)
    with pytest.raises(SceneError):
        prepare_assets(legacy, RenderMode.spectral)
    with pytest.raises(SceneError):
        prepare_assets(legacy, RenderMode.latent, codec)
    upsampler = UpsamplerWeights.initialize(6, np.random.default_rng(0), hidden=8)
    assets = prepare_assets(legacy, RenderMode.latent, codec, upsampler)
    assert assets.albedo.shape == (len(materials), 6)
    assert np.all(assets.albedo >= 0)
    with pytest.raises(SceneError):
        prepare_assets(legacy, RenderMode.latent, codec, UpsamplerWeights.initialize(9, np.random.default_rng(0)))
    rgb_assets = prepare_assets(legacy, RenderMode.rgb)
    np.testing.assert_allclose(rgb_assets.albedo[list(materials).index("white")], 0.7)


def test_roulette_is_unbiased_and_bounded():
    rng = np.random.default_rng(2)
    u = rng.uniform(size=200_000)
    throughput = np.full((len(u), 2), [0.5, 1.0])
    alive, weighted, lum = roulette(throughput, np.full(len(u), 0.4), u)
    assert len(alive) / len(u) == pytest.approx(0.4, abs=0.01)
    assert weighted.sum(axis=0) / len(u) == pytest.approx([0.5, 1.0], rel=0.02)
    np.testing.assert_allclose(lum, 1.0)

    alive, weighted, _ = roulette(np.full((len(u), 1), 4.0), np.full(len(u), 1e-6), u)
    assert len(alive) / len(u) == pytest.approx(RR_MIN_SURVIVAL, abs=0.005)
    assert np.all(weighted <= THROUGHPUT_CAP)


def test_unbounded_render_with_bright_codes_stays_finite(scene):
    base = prepare_assets(scene, RenderMode.rgb)
    bright = RenderAssets(
        mode=RenderMode.latent,
        albedo=np.full((len(base.albedo), 6), 1.5),
        emission=np.ones((len(base.emission), 6)),
        luminance=np.full(len(base.luminance), 0.9),
    )
    image = render_assets(scene, bright, small_job(width=8, height=8, spp=4, max_depth=-1), workers=1)
    assert np.all(np.isfinite(image.data))
    assert image.data.max() < 1e6


def test_shading_evaluations_are_counted_per_channel_group(scene, codec):
    job = small_job()
    spectral = render(scene, job.model_copy(update={"mode": RenderMode.spectral}), workers=1)
    rgb = render(scene, job.model_copy(update={"mode": RenderMode.rgb}), workers=1)
    latent = render(scene, job.model_copy(update={"mode": RenderMode.latent}), codec=codec, workers=1)
    assert spectral.stats.shading_events == rgb.stats.shading_events == latent.stats.shading_events > 0
    assert spectral.shading_evaluations == N_SAMPLES * spectral.stats.shading_events
    assert rgb.shading_evaluations == rgb.stats.shading_events
    assert latent.shading_evaluations == 2 * latent.stats.shading_events


def test_scene_validation(scene):
    with pytest.raises(SceneError):
        Scene(scene.camera, scene.materials, quads=scene.quads)
    with pytest.raises(SceneError):
        Scene(scene.camera, {}, quads=scene.quads, emitters=scene.emitters)
    spheres = [Sphere(f"s{i}", (0.5, 0.5, 0.5), 0.1, "white") for i in range(9)]
    with pytest.raises(SceneError):
        Scene(scene.camera, scene.materials, spheres=spheres, emitters=scene.emitters)
    with pytest.raises(SceneError):
        Material("over", reflectance=np.full(N_SAMPLES, 1.5))
    with pytest.raises(SceneError):
        Sphere("flat", (0, 0, 0), 0.0, "white")
    with pytest.raises(SceneError):
        cornell_scene("moonlight")  # type: ignore[arg-type]
    with pytest.raises(SceneError):
        render(scene, small_job(mode=RenderMode.latent))


def test_render_job_validation():
    with pytest.raises(ValidationError):
        RenderJob(max_depth=0)
    with pytest.raises(ValidationError):
        RenderJob(max_depth=-2)
    with pytest.raises(ValidationError):
        RenderJob(spp=0)
    assert RenderJob(max_depth=-1).unbounded


def test_error_map_properties():
    rng = np.random.default_rng(2)
    a = rng.random((4, 5, 3))
    b = rng.random((4, 5, 3))
    mse, mean = error_map(a, a)
    assert mean == 0.0 and np.all(mse == 0)
    np.testing.assert_array_equal(error_map(a, b)[0], error_map(b, a)[0])
    mse, mean = error_map(a, a + 0.1)
    np.testing.assert_allclose(mse, 0.01)
    assert mean == pytest.approx(0.01)
    with pytest.raises(ImageError):
        error_map(a, b[:, :4])


def test_image_conversions(codec):
    zero = ChannelImage(np.zeros((3, 4, 6)))
    decoded = decode_image(zero, codec)
    assert decoded.channels == N_SAMPLES
    assert np.all(image_to_srgb(decoded) == 0)
    white = np.ones((2, 2, 3))
    assert np.all(image_to_srgb(white, exposure=1.0) == 255)
    with pytest.raises(ImageError):
        ChannelImage(-np.ones((1, 1, 3)))
    with pytest.raises(ImageError):
        decode_image(ChannelImage(np.zeros((1, 1, 9))), codec)
