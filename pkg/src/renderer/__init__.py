from .image import (
    ChannelImage,
    ImageError,
    RenderStats,
    decode_image,
    error_map,
    error_map_to_gray,
    exposure_for,
    image_to_srgb,
    image_xyz,
    lab_image,
    linear_rgb,
)
from .presets import SCENE_KINDS, cornell_scene, gaussian_reflectance, logistic_reflectance, narrowband_spd
from .scene import Box, Camera, Emitter, Material, Quad, Scene, SceneError, Sphere
from .tracer import RenderAssets, prepare_assets, render, render_assets, render_latent_multipass

__all__ = [
    "Box",
    "Camera",
    "ChannelImage",
    "Emitter",
    "ImageError",
    "Material",
    "Quad",
    "RenderAssets",
    "RenderStats",
    "SCENE_KINDS",
    "Scene",
    "SceneError",
    "Sphere",
    "cornell_scene",
    "decode_image",
    "error_map",
    "error_map_to_gray",
    "exposure_for",
    "gaussian_reflectance",
    "image_to_srgb",
    "image_xyz",
    "lab_image",
    "linear_rgb",
    "logistic_reflectance",
    "narrowband_spd",
    "prepare_assets",
    "render",
    "render_assets",
    "render_latent_multipass",
]
