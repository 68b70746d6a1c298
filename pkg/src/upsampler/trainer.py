import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from codec import CodecWeights, encode
from colorimetry import rgb_of_reflectance
from models.training import UpsampleTrainConfig
from training.optim import AdamW, ReduceLROnPlateau, clip_grad_norm
from utils.seeding import stream

from .loss import loss_upsample
from .mlp import UpsamplerError, UpsamplerWeights, backward, forward

logger = logging.getLogger(__name__)


@dataclass
class UpsampleReport:
    initial_latent: float
    rows: list[dict] = field(default_factory=list)
    # latent loss of the returned network over the full training set
    final_latent: float = math.nan

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["epoch", "latent", "color", "total", "lr"])


def training_pairs(codec: CodecWeights, reflectance: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(linear sRGB under D65, latent code) per reflectance."""
    reflectance = np.atleast_2d(reflectance)
    return rgb_of_reflectance(reflectance), encode(codec, reflectance)


def evaluate(
    uw: UpsamplerWeights, codec: CodecWeights, rgb: np.ndarray, z: np.ndarray, cfg: UpsampleTrainConfig
):
    return loss_upsample(forward(uw, rgb).out, z, codec, cfg.lambda_color, cfg.lambda_maxabs)[0]


def train_upsampler(
    reflectance: np.ndarray, codec: CodecWeights, cfg: UpsampleTrainConfig
) -> tuple[UpsamplerWeights, UpsampleReport]:
    """Fit the RGB -> latent MLP against a frozen codec."""
    reflectance = np.asarray(reflectance, dtype=np.float64)
    if len(reflectance) == 0:
        raise UpsamplerError("upsampler training needs reflectances")
    rgb, z = training_pairs(codec, reflectance)

    uw = UpsamplerWeights.initialize(codec.k, stream(cfg.seed, "upsampler-init"), cfg.hidden)
    report = UpsampleReport(initial_latent=evaluate(uw, codec, rgb, z, cfg).latent)
    logger.info(f"training upsampler on {len(rgb)} reflectances, initial latent loss {report.initial_latent:.6g}")

    params = uw.params()
    optimizer = AdamW(lr=cfg.lr, weight_decay=cfg.weight_decay)
    scheduler = ReduceLROnPlateau(
        optimizer, factor=cfg.plateau_factor, patience=cfg.plateau_patience, min_lr=cfg.min_lr
    )
    batches = math.ceil(len(rgb) / cfg.batch_size)

    for epoch in range(1, cfg.epochs + 1):
        order = stream(cfg.seed, f"upsampler-epoch-{epoch}").permutation(len(rgb))
        sums = np.zeros(3)
        for b in range(batches):
            idx = order[b * cfg.batch_size : (b + 1) * cfg.batch_size]
            current = UpsamplerWeights.from_params(params)
            cache = forward(current, rgb[idx])
            loss, g_out = loss_upsample(
                cache.out, z[idx], codec, cfg.lambda_color, cfg.lambda_maxabs, grad=True
            )
            if not math.isfinite(loss.total):
                raise UpsamplerError(f"non-finite upsampler loss at epoch {epoch}, batch {b}")
            grads = backward(current, cache, g_out)
            clip_grad_norm(grads, cfg.grad_clip_norm)
            optimizer.step(params, grads)
            sums += (loss.latent * len(idx), loss.color * len(idx), loss.total * len(idx))

        latent, color, total = sums / len(rgb)
        report.rows.append({"epoch": epoch, "latent": latent, "color": color, "total": total, "lr": optimizer.lr})
        scheduler.step(total)
        if epoch % 100 == 0 or epoch == cfg.epochs:
            logger.info(f"epoch {epoch}: latent {latent:.6g} color {color:.4f} lr {optimizer.lr:.3g}")

    meta = {"seed": cfg.seed, "epochs": cfg.epochs, "config": cfg.model_dump()}
    trained = UpsamplerWeights.from_params(params, training_meta=meta)
    report.final_latent = evaluate(trained, codec, rgb, z, cfg).latent
    logger.info(f"final latent loss {report.final_latent:.6g} (initial {report.initial_latent:.6g})")
    return trained, report
