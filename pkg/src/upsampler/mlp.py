from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from hadacodec import HadacodecError

HIDDEN = 128
INPUT_DIM = 3


class UpsamplerError(HadacodecError, ValueError):
    pass


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def silu(x: np.ndarray) -> np.ndarray:
    return x * sigmoid(x)


def silu_grad(x: np.ndarray) -> np.ndarray:
    s = sigmoid(x)
    return s * (1.0 + x * (1.0 - s))


@dataclass(frozen=True, eq=False)
class UpsamplerWeights:
    """3 -> hidden -> hidden -> k with SiLU after the two hidden layers."""

    weights: tuple[np.ndarray, ...]  # (out, in) per layer
    biases: tuple[np.ndarray, ...]
    training_meta: Optional[dict[str, Any]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.weights) != 3 or len(self.biases) != 3:
            raise UpsamplerError("the upsampler has exactly three dense layers")
        weights = tuple(np.array(w, dtype=np.float64) for w in self.weights)
        biases = tuple(np.array(b, dtype=np.float64) for b in self.biases)
        fan_in = INPUT_DIM
        for w, b in zip(weights, biases):
            if w.ndim != 2 or w.shape[1] != fan_in or b.shape != (w.shape[0],):
                raise UpsamplerError(f"layer shapes {w.shape} / {b.shape} do not chain from {fan_in}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise UpsamplerError("upsampler parameters must be finite")
            fan_in = w.shape[0]
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "biases", biases)

    @property
    def k(self) -> int:
        return self.weights[-1].shape[0]

    @property
    def dims(self) -> list[int]:
        return [INPUT_DIM] + [w.shape[0] for w in self.weights]

    def params(self) -> dict[str, np.ndarray]:
        """Copies of the parameters, keyed w0, b0, w1, ..."""
        out = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            out[f"w{i}"] = w.copy()
            out[f"b{i}"] = b.copy()
        return out

    @classmethod
    def from_params(cls, params: dict[str, np.ndarray], training_meta=None) -> "UpsamplerWeights":
        return cls(
            tuple(params[f"w{i}"] for i in range(3)),
            tuple(params[f"b{i}"] for i in range(3)),
            training_meta,
        )

    @classmethod
    def initialize(cls, k: int, rng: np.random.Generator, hidden: int = HIDDEN) -> "UpsamplerWeights":
        """Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases."""
        dims = [INPUT_DIM, hidden, hidden, k]
        weights, biases = [], []
        for fan_in, fan_out in zip(dims[:-1], dims[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            weights.append(rng.uniform(-bound, bound, (fan_out, fan_in)))
            biases.append(rng.uniform(-bound, bound, fan_out))
        return cls(tuple(weights), tuple(biases))


@dataclass
class ForwardCache:
    x: np.ndarray
    pre: list[np.ndarray]
    act: list[np.ndarray]
    out: np.ndarray


ROWWISE_CHUNK = 64


def _dense_rowwise(h: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    # each output depends only on its own row, whatever the batch size
    out = np.empty((len(h), w.shape[0]))
    for start in range(0, len(h), ROWWISE_CHUNK):
        rows = h[start : start + ROWWISE_CHUNK]
        out[start : start + ROWWISE_CHUNK] = np.sum(rows[:, None, :] * w[None, :, :], axis=-1) + b
    return out


def forward(uw: UpsamplerWeights, rgb: np.ndarray, rowwise: bool = False) -> ForwardCache:
    """
    Network output for a batch of RGB rows.

    `rowwise` trades speed for results that are bit-identical to evaluating
    each row alone.
    """
    x = np.atleast_2d(np.asarray(rgb, dtype=np.float64))
    pre, act = [], [x]
    h = x
    for i, (w, b) in enumerate(zip(uw.weights, uw.biases)):
        z = _dense_rowwise(h, w, b) if rowwise else h @ w.T + b
        if i < 2:
            pre.append(z)
            h = silu(z)
            act.append(h)
        else:
            h = z
    return ForwardCache(x=x, pre=pre, act=act, out=h)


def backward(uw: UpsamplerWeights, cache: ForwardCache, g_out: np.ndarray) -> dict[str, np.ndarray]:
    """Parameter gradients given d loss / d output."""
    grads = {}
    g = g_out
    for i in (2, 1, 0):
        grads[f"w{i}"] = g.T @ cache.act[i]
        grads[f"b{i}"] = g.sum(axis=0)
        if i > 0:
            g = (g @ uw.weights[i]) * silu_grad(cache.pre[i - 1])
    return grads
