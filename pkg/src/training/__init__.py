from .grid_search import ALGEBRA_AXIS, DEFAULT_GRID, grid_points, grid_search
from .losses import (
    TERMS,
    Gradients,
    LossTerms,
    algebra_penalty,
    gradients,
    loss_alg,
    loss_code,
    loss_col,
    loss_e2e,
    loss_rec,
    loss_terms,
    matrix_gradients,
    matrix_loss_terms,
    total_loss,
)
from .optim import Adam, AdamW, ReduceLROnPlateau, clip_grad_norm
from .trainer import TrainingError, TrainReport, train

__all__ = [
    "ALGEBRA_AXIS",
    "Adam",
    "AdamW",
    "DEFAULT_GRID",
    "Gradients",
    "LossTerms",
    "ReduceLROnPlateau",
    "TERMS",
    "TrainReport",
    "TrainingError",
    "algebra_penalty",
    "clip_grad_norm",
    "gradients",
    "grid_points",
    "grid_search",
    "loss_alg",
    "loss_code",
    "loss_col",
    "loss_e2e",
    "loss_rec",
    "loss_terms",
    "matrix_gradients",
    "matrix_loss_terms",
    "total_loss",
    "train",
]
