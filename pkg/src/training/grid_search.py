import itertools
import logging
from typing import Optional

import numpy as np
import pandas as pd

from models.training import LossWeights, TrainConfig

from .trainer import train

logger = logging.getLogger(__name__)

# axes of the selection study; the algebra axis defaults to off
DEFAULT_GRID: dict[str, list[float]] = {
    "lambda_rec": list(np.round(np.arange(0.0, 3.01, 0.5), 6)),
    "lambda_e2e": list(np.round(np.arange(0.0, 2.01, 0.5), 6)),
    "lambda_code": list(np.round(np.arange(0.0, 1.01, 0.25), 6)),
    "lambda_col": list(np.round(np.arange(0.0, 1.01, 0.25), 6)),
    "lambda_alg": [0.0],
}
ALGEBRA_AXIS = [0.001, 0.005, 0.009]


def grid_points(
    lambda_grids: dict[str, list[float]], max_points: Optional[int] = None
) -> list[LossWeights]:
    """Cartesian product of the λ axes, skipping the all-zero point."""
    unknown = set(lambda_grids) - set(LossWeights.model_fields)
    if unknown:
        raise ValueError(f"unknown loss weights in grid: {sorted(unknown)}")
    names = list(lambda_grids)
    points = []
    for values in itertools.product(*(lambda_grids[name] for name in names)):
        lw = LossWeights.only(**{name: float(v) for name, v in zip(names, values)})
        if lw.total_weight() == 0:
            continue
        points.append(lw)
        if max_points is not None and len(points) >= max_points:
            break
    return points


def grid_search(
    lambda_grids: dict[str, list[float]],
    cfg: TrainConfig,
    reflectance_train: np.ndarray,
    illumination_train: np.ndarray,
    reflectance_test: np.ndarray,
    illumination_test: np.ndarray,
    max_points: Optional[int] = None,
    pairs: int = 500,
) -> pd.DataFrame:
    """
    Train one codec per λ tuple and rank by mean multi-bounce ΔE94.

    Rows are sorted ascending by `mean_de94` (mean over bounces 1..3);
    `variant` is the position of the tuple in grid order.
    """
    from evaluation import multibounce_eval

    rows = []
    for variant, lw in enumerate(grid_points(lambda_grids, max_points)):
        weights, report = train(reflectance_train, illumination_train, cfg, lw)
        results = multibounce_eval(
            weights, reflectance_test, illumination_test, pairs=pairs, seed=cfg.seed
        )
        row = {"variant": variant, **lw.model_dump()}
        for r in results:
            row[f"de94_b{r.bounce}"] = r.mean
        row["mean_de94"] = float(np.mean([r.mean for r in results]))
        row["best_val_loss"] = report.best_val_loss
        row["epochs"] = len(report.rows)
        rows.append(row)
        logger.info(f"variant {variant} {lw.model_dump()}: mean ΔE94 {row['mean_de94']:.4f}")

    frame = pd.DataFrame(rows)
    if frame.empty:
        return frame
    frame = frame.sort_values(["mean_de94", "variant"], kind="stable").reset_index(drop=True)
    frame.insert(0, "rank", np.arange(1, len(frame) + 1))
    return frame
