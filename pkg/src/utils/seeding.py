import hashlib

import numpy as np


def stream_key(seed: int, purpose: str) -> int:
    """128-bit key for the named random stream `purpose` under `seed`."""
    digest = hashlib.sha256(f"{seed}:{purpose}".encode()).digest()
    return int.from_bytes(digest[:16], "little")


def stream(seed: int, purpose: str) -> np.random.Generator:
    """
    Independent random generator for one consumer of the run seed.

    Every consumer asks for its own purpose string, so adding a consumer never
    shifts the numbers drawn by the others.
    """
    return np.random.default_rng(np.random.SeedSequence(stream_key(seed, purpose)))
