from .codes import CodeTable, format_codes, parse_codes, read_codes, write_codes
from .config_file import format_config, parse_config, read_config, write_config
from .errors import FormatError
from .manifest import ManifestRecorder, read_manifest, sha256_file, write_manifest
from .ppm import decode_ppm, encode_ppm, read_ppm, write_ppm
from .raw_image import decode_raw, encode_raw, read_raw, write_raw
from .scene_file import format_scene, parse_scene, read_scene, write_scene
from .spectra import SpectraTable, format_spectra, parse_spectra, read_spectra, write_spectra
from .weights import (
    format_codec,
    format_upsampler,
    parse_codec,
    parse_upsampler,
    read_codec,
    read_upsampler,
    write_codec,
    write_upsampler,
)

__all__ = [
    "CodeTable",
    "FormatError",
    "ManifestRecorder",
    "SpectraTable",
    "decode_ppm",
    "decode_raw",
    "encode_ppm",
    "encode_raw",
    "format_codec",
    "format_codes",
    "format_config",
    "format_scene",
    "format_spectra",
    "format_upsampler",
    "parse_codec",
    "parse_codes",
    "parse_config",
    "parse_scene",
    "parse_spectra",
    "parse_upsampler",
    "read_codec",
    "read_codes",
    "read_config",
    "read_manifest",
    "read_ppm",
    "read_raw",
    "read_scene",
    "read_spectra",
    "read_upsampler",
    "sha256_file",
    "write_codec",
    "write_codes",
    "write_config",
    "write_manifest",
    "write_ppm",
    "write_raw",
    "write_scene",
    "write_spectra",
    "write_upsampler",
]
