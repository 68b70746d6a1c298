from .ops import (
    blockwise_hadamard,
    decode,
    decode_curve,
    encode,
    homomorphism_gap,
    join_blocks,
    reconstruction_report,
    split_blocks,
)
from .weights import (
    DEFAULT_BETA,
    CodecDomainError,
    CodecWeights,
    effective_weights,
    softplus,
    softplus_grad,
)

__all__ = [
    "DEFAULT_BETA",
    "CodecDomainError",
    "CodecWeights",
    "blockwise_hadamard",
    "decode",
    "decode_curve",
    "effective_weights",
    "encode",
    "homomorphism_gap",
    "join_blocks",
    "reconstruction_report",
    "softplus",
    "softplus_grad",
    "split_blocks",
]
