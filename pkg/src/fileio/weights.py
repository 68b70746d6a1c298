"""
Codec and upsampler weights as JSON.

Floats are written in their shortest round-trip form, so save -> load gives
back the raw arrays bit for bit.
"""

import json
import logging
from pathlib import Path
from typing import TypeVar, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from codec import CodecDomainError, CodecWeights
from models.files import CodecWeightsFile, UpsamplerWeightsFile
from upsampler import UpsamplerError, UpsamplerWeights
from upsampler.mlp import INPUT_DIM

from .errors import FormatError

logger = logging.getLogger(__name__)

FileModel = TypeVar("FileModel", bound=BaseModel)


def _validate(model: type[FileModel], text: str, path) -> FileModel:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", path, line=e.lineno, offset=e.pos) from e
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise FormatError(f"{where}: {first['msg']}", path) from e


def codec_to_file(w: CodecWeights) -> CodecWeightsFile:
    return CodecWeightsFile(
        k=w.k,
        n=w.n,
        beta=w.beta,
        raw_enc=w.raw_enc.ravel().tolist(),
        raw_dec=w.raw_dec.ravel().tolist(),
        training_meta=w.training_meta,
    )


def codec_from_file(f: CodecWeightsFile, path=None) -> CodecWeights:
    try:
        return CodecWeights(
            np.array(f.raw_enc, dtype=np.float64).reshape(f.k, f.n),
            np.array(f.raw_dec, dtype=np.float64).reshape(f.n, f.k),
            beta=f.beta,
            training_meta=f.training_meta,
        )
    except CodecDomainError as e:
        raise FormatError(str(e), path) from e


def format_codec(w: CodecWeights) -> str:
    return codec_to_file(w).model_dump_json(indent=2)


def parse_codec(text: str, path: Union[str, Path, None] = None) -> CodecWeights:
    return codec_from_file(_validate(CodecWeightsFile, text, path), path)


def write_codec(path: Union[str, Path], w: CodecWeights) -> None:
    Path(path).write_text(format_codec(w), encoding="utf-8")
    logger.info(f"wrote k={w.k} codec weights to {path}")


def read_codec(path: Union[str, Path]) -> CodecWeights:
    path = Path(path)
    return parse_codec(path.read_text(encoding="utf-8"), path)


def upsampler_to_file(uw: UpsamplerWeights) -> UpsamplerWeightsFile:
    return UpsamplerWeightsFile(
        k=uw.k,
        dims=uw.dims,
        weights=[w.ravel().tolist() for w in uw.weights],
        biases=[b.tolist() for b in uw.biases],
        training_meta=uw.training_meta,
    )


def upsampler_from_file(f: UpsamplerWeightsFile, path=None) -> UpsamplerWeights:
    if f.dims[0] != INPUT_DIM:
        raise FormatError(f"upsampler input must be {INPUT_DIM}-dimensional, got {f.dims[0]}", path)
    weights = tuple(
        np.array(w, dtype=np.float64).reshape(fan_out, fan_in)
        for w, fan_in, fan_out in zip(f.weights, f.dims[:-1], f.dims[1:])
    )
    biases = tuple(np.array(b, dtype=np.float64) for b in f.biases)
    try:
        return UpsamplerWeights(weights, biases, f.training_meta)
    except UpsamplerError as e:
        raise FormatError(str(e), path) from e


def format_upsampler(uw: UpsamplerWeights) -> str:
    return upsampler_to_file(uw).model_dump_json(indent=2)


def parse_upsampler(text: str, path: Union[str, Path, None] = None) -> UpsamplerWeights:
    return upsampler_from_file(_validate(UpsamplerWeightsFile, text, path), path)


def write_upsampler(path: Union[str, Path], uw: UpsamplerWeights) -> None:
    Path(path).write_text(format_upsampler(uw), encoding="utf-8")
    logger.info(f"wrote upsampler weights (dims {uw.dims}) to {path}")


def read_upsampler(path: Union[str, Path]) -> UpsamplerWeights:
    path = Path(path)
    return parse_upsampler(path.read_text(encoding="utf-8"), path)
