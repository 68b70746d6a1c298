import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from codec import CodecWeights
from hadacodec import HadacodecError
from models.training import LossWeights, TrainConfig
from utils.seeding import stream

from .losses import TERMS, gradients, loss_terms
from .optim import Adam

logger = logging.getLogger(__name__)


class TrainingError(HadacodecError):
    pass


@dataclass
class ValidationSet:
    reflectance: np.ndarray
    illumination: np.ndarray


@dataclass
class TrainReport:
    initial_val_loss: float
    rows: list[dict] = field(default_factory=list)
    best_epoch: int = 0

    @property
    def best_val_loss(self) -> float:
        if self.best_epoch == 0:
            return self.initial_val_loss
        return self.rows[self.best_epoch - 1]["val_total"]

    def to_frame(self) -> pd.DataFrame:
        columns = ["epoch", *(f"train_{t}" for t in TERMS), "train_total", "val_total", "best"]
        frame = pd.DataFrame(self.rows, columns=columns)
        frame["best"] = frame["epoch"] == self.best_epoch
        return frame


def _split_validation(
    pool: np.ndarray, fraction: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    m = len(pool)
    n_val = max(1, int(round(fraction * m))) if m >= 2 else 0
    order = rng.permutation(m)
    if n_val == 0:
        return pool, pool
    return pool[order[n_val:]], pool[order[:n_val]]


def validation_pairs(reflectance: np.ndarray, illumination: np.ndarray) -> ValidationSet:
    """Every held-out reflectance paired with every held-out illuminant."""
    r_idx, l_idx = np.divmod(np.arange(len(reflectance) * len(illumination)), len(illumination))
    return ValidationSet(reflectance[r_idx], illumination[l_idx])


def epoch_batches(
    reflectance: np.ndarray,
    illumination: np.ndarray,
    cfg: TrainConfig,
    epoch: int,
):
    """
    Yield the (R, L) batches of one epoch.

    An epoch visits every (reflectance, illuminant) pair once in a seeded random
    order; each pair gets its own log-uniform illuminant scale.
    """
    rng = stream(cfg.seed, f"epoch-{epoch}")
    m_l = len(illumination)
    order = rng.permutation(len(reflectance) * m_l)
    log_lo, log_hi = np.log(cfg.illum_scale_min), np.log(cfg.illum_scale_max)
    scales = np.exp(rng.uniform(log_lo, log_hi, len(order)))
    for start in range(0, len(order), cfg.batch_size):
        r_idx, l_idx = np.divmod(order[start : start + cfg.batch_size], m_l)
        yield reflectance[r_idx], illumination[l_idx] * scales[start : start + cfg.batch_size, None]


def train(
    reflectance: np.ndarray,
    illumination: np.ndarray,
    cfg: TrainConfig,
    lw: LossWeights,
    initial: Optional[CodecWeights] = None,
) -> tuple[CodecWeights, TrainReport]:
    """
    Train codec weights with Adam and early stopping on validation total loss.

    Returns the best-validation weights (possibly the initial ones) and the
    per-epoch log.
    """
    reflectance = np.asarray(reflectance, dtype=np.float64)
    illumination = np.asarray(illumination, dtype=np.float64)
    if len(reflectance) == 0 or len(illumination) == 0:
        raise TrainingError("training needs at least one reflectance and one illumination spectrum")

    split_rng = stream(cfg.seed, "validation-split")
    r_train, r_val = _split_validation(reflectance, cfg.val_fraction, split_rng)
    l_train, l_val = _split_validation(illumination, cfg.val_fraction, split_rng)
    val = validation_pairs(r_val, l_val)

    weights = initial or CodecWeights.initialize(cfg.k, cfg.seed, n=reflectance.shape[1])
    report = TrainReport(initial_val_loss=_val_loss(weights, val, lw))
    logger.info(
        f"training k={weights.k} on {len(r_train)} reflectances, {len(l_train)} illuminants; "
        f"initial val loss {report.initial_val_loss:.6g}"
    )

    best = weights
    params = {"raw_enc": weights.raw_enc.copy(), "raw_dec": weights.raw_dec.copy()}
    optimizer = Adam(lr=cfg.lr)
    stale = 0

    for epoch in range(1, cfg.max_epochs + 1):
        sums = dict.fromkeys(TERMS, 0.0)
        sum_total = 0.0
        batches = 0
        for r_b, l_b in epoch_batches(r_train, l_train, cfg, epoch):
            terms, grads = gradients(weights, r_b, l_b, lw)
            total = terms.total(lw)
            if not math.isfinite(total):
                raise TrainingError(
                    f"non-finite loss at epoch {epoch}, batch {batches}: {terms.as_dict()}"
                )
            optimizer.step(params, grads.as_dict())
            weights = weights.with_raw(params["raw_enc"].copy(), params["raw_dec"].copy())
            for t, v in terms.as_dict().items():
                sums[t] += v
            sum_total += total
            batches += 1

        val_total = _val_loss(weights, val, lw)
        if not math.isfinite(val_total):
            raise TrainingError(f"non-finite validation loss at epoch {epoch}")
        row = {"epoch": epoch, **{f"train_{t}": sums[t] / batches for t in TERMS}}
        row["train_total"] = sum_total / batches
        row["val_total"] = val_total
        report.rows.append(row)
        logger.info(
            f"epoch {epoch}: train {row['train_total']:.6g} val {val_total:.6g} lr {optimizer.lr:.3g}"
        )

        if val_total < report.best_val_loss:
            report.best_epoch = epoch
            best = weights
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                logger.info(f"early stopping after epoch {epoch}, best epoch {report.best_epoch}")
                break

    meta = {
        "seed": cfg.seed,
        "lambda_weights": lw.model_dump(),
        "epochs": len(report.rows),
        "best_epoch": report.best_epoch,
    }
    return best.with_raw(best.raw_enc, best.raw_dec, training_meta=meta), report


def _val_loss(w: CodecWeights, val: ValidationSet, lw: LossWeights) -> float:
    return loss_terms(w, val.reflectance, val.illumination).total(lw)
