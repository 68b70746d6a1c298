from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional

import numpy as np

from hadacodec import HadacodecError
from spectral import N_SAMPLES
from utils.seeding import stream

DEFAULT_BETA = 10.0
# beyond this beta*w the softplus equals w to double precision
SOFTPLUS_LINEAR_THRESHOLD = 30.0


class CodecDomainError(HadacodecError, ValueError):
    pass


def softplus(raw: np.ndarray, beta: float = DEFAULT_BETA) -> np.ndarray:
    """(1/beta) log(1 + exp(beta raw)), overflow safe."""
    raw = np.asarray(raw, dtype=np.float64)
    scaled = beta * raw
    linear = scaled > SOFTPLUS_LINEAR_THRESHOLD
    out = np.log1p(np.exp(np.where(linear, 0.0, scaled))) / beta
    return np.where(linear, raw, out)


def softplus_grad(raw: np.ndarray, beta: float = DEFAULT_BETA) -> np.ndarray:
    """d softplus / d raw = sigmoid(beta raw)."""
    scaled = np.clip(beta * np.asarray(raw, dtype=np.float64), -500.0, 500.0)
    return 1.0 / (1.0 + np.exp(-scaled))


@dataclass(frozen=True, eq=False)
class CodecWeights:
    raw_enc: np.ndarray  # (k, n)
    raw_dec: np.ndarray  # (n, k)
    beta: float = DEFAULT_BETA
    training_meta: Optional[dict[str, Any]] = field(default=None, compare=False)

    def __post_init__(self):
        enc = np.array(self.raw_enc, dtype=np.float64)
        dec = np.array(self.raw_dec, dtype=np.float64)
        if enc.ndim != 2 or dec.ndim != 2 or enc.shape != dec.shape[::-1]:
            raise CodecDomainError(
                f"encoder {enc.shape} and decoder {dec.shape} shapes do not match"
            )
        k = enc.shape[0]
        if k == 0 or k % 3 != 0:
            raise CodecDomainError(f"latent size must be a positive multiple of 3, got {k}")
        if not (np.all(np.isfinite(enc)) and np.all(np.isfinite(dec))):
            raise CodecDomainError("raw weights must be finite")
        if not np.isfinite(self.beta) or self.beta <= 0:
            raise CodecDomainError(f"softplus sharpness must be positive, got {self.beta}")
        enc.setflags(write=False)
        dec.setflags(write=False)
        object.__setattr__(self, "raw_enc", enc)
        object.__setattr__(self, "raw_dec", dec)

    @property
    def k(self) -> int:
        return self.raw_enc.shape[0]

    @property
    def n(self) -> int:
        return self.raw_enc.shape[1]

    @property
    def blocks(self) -> int:
        return self.k // 3

    @cached_property
    def w_enc(self) -> np.ndarray:
        w = softplus(self.raw_enc, self.beta)
        w.setflags(write=False)
        return w

    @cached_property
    def w_dec(self) -> np.ndarray:
        w = softplus(self.raw_dec, self.beta)
        w.setflags(write=False)
        return w

    def with_raw(
        self, raw_enc: np.ndarray, raw_dec: np.ndarray, training_meta: Optional[dict] = None
    ) -> "CodecWeights":
        return CodecWeights(raw_enc, raw_dec, self.beta, training_meta or self.training_meta)

    @classmethod
    def initialize(
        cls, k: int, seed: int, n: int = N_SAMPLES, beta: float = DEFAULT_BETA
    ) -> "CodecWeights":
        """Uniform(-0.5, 0.5) raw weights, scaled by 1/sqrt(n) (encoder) and 1/sqrt(k) (decoder)."""
        rng = stream(seed, "codec-init")
        raw_enc = rng.uniform(-0.5, 0.5, (k, n)) / np.sqrt(n)
        raw_dec = rng.uniform(-0.5, 0.5, (n, k)) / np.sqrt(k)
        return cls(raw_enc, raw_dec, beta)


def effective_weights(w: CodecWeights) -> tuple[np.ndarray, np.ndarray]:
    return w.w_enc, w.w_dec
