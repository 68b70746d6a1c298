import numpy as np

from utils.seeding import stream_key

_MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV_2_53 = 1.0 / float(1 << 53)


def render_key(seed: int, purpose: str) -> np.uint64:
    return np.uint64(stream_key(seed, purpose) & _MASK64)


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on uint64."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = x ^ (x >> np.uint64(30))
        x = x * _M1
        x = x ^ (x >> np.uint64(27))
        x = x * _M2
        return x ^ (x >> np.uint64(31))


def counter_hash(key: np.uint64, *counters) -> np.ndarray:
    """Stateless hash of a key and integer counters; broadcasts over array counters."""
    h = np.asarray(key, dtype=np.uint64)
    for c in counters:
        with np.errstate(over="ignore"):
            h = mix64(h ^ (np.asarray(c, dtype=np.uint64) + _GOLDEN))
    return h


def uniform(key: np.uint64, pixel: np.ndarray, sample: np.ndarray, dim: int) -> np.ndarray:
    """
    Uniform [0, 1) number for (pixel, sample, dimension).

    Values depend only on the key and the counters, never on evaluation order,
    so any tiling or thread schedule draws the same numbers.
    """
    h = counter_hash(key, pixel, sample, dim)
    return (h >> np.uint64(11)).astype(np.float64) * _INV_2_53
