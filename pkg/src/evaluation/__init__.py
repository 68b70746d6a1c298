from .multibounce import (
    BounceChainResult,
    EvaluationError,
    latent_chain,
    multibounce_eval,
    normalized_lab,
    results_frame,
    spectral_chain,
)
from .passes import PassCountReport, pass_count_report
from .scenes import (
    QualityOrdering,
    RenderComparison,
    SceneColorReport,
    codec_quality_ordering,
    compare_renders,
    pixel_error_frame,
    scene_color_report,
)

# reference mean ΔE94 per bounce of the selected k=6 configuration
REFERENCE_DE94 = {1: 2.16, 2: 1.79, 3: 1.74}

__all__ = [
    "BounceChainResult",
    "EvaluationError",
    "PassCountReport",
    "QualityOrdering",
    "REFERENCE_DE94",
    "RenderComparison",
    "SceneColorReport",
    "codec_quality_ordering",
    "compare_renders",
    "latent_chain",
    "multibounce_eval",
    "normalized_lab",
    "pass_count_report",
    "pixel_error_frame",
    "results_frame",
    "scene_color_report",
    "spectral_chain",
]
