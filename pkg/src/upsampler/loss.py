from dataclasses import dataclass

import numpy as np

from codec import CodecWeights
from colorimetry import cmf_table, delta_e76, xyz_to_lab, xyz_to_lab_jacobian


@dataclass
class UpsampleLoss:
    latent: float
    color: float
    total: float


def _color_matrix(codec: CodecWeights) -> np.ndarray:
    """Maps codes to D65 reflectance XYZ through the decoder, (3, k)."""
    return cmf_table().w_xyz @ codec.w_dec


def loss_upsample(
    z_pred: np.ndarray,
    z_gt: np.ndarray,
    codec: CodecWeights,
    lambda_color: float = 0.05,
    lambda_maxabs: float = 0.3,
    grad: bool = False,
) -> tuple[UpsampleLoss, np.ndarray | None]:
    """
    latent = MSE + lambda_maxabs * mean(max |z_pred - z_gt|)
    color  = mean ΔE76 between Lab of the decoded predictions and targets
    total  = latent + lambda_color * color

    Predictions are decoded with the decoder matrix directly, so negative
    training outputs are allowed. With `grad`, also returns d total / d z_pred.
    """
    z_pred = np.atleast_2d(z_pred)
    z_gt = np.atleast_2d(z_gt)
    m, k = z_pred.shape
    diff = z_pred - z_gt
    worst = np.argmax(np.abs(diff), axis=1)
    rows = np.arange(m)
    latent = float(np.mean(diff**2) + lambda_maxabs * np.mean(np.abs(diff[rows, worst])))

    white = cmf_table().white_xyz
    colors = _color_matrix(codec)
    xyz_pred = z_pred @ colors.T
    lab_pred = xyz_to_lab(xyz_pred, white)
    lab_gt = xyz_to_lab(z_gt @ colors.T, white)
    de = delta_e76(lab_pred, lab_gt)
    color = float(np.mean(de))
    loss = UpsampleLoss(latent=latent, color=color, total=latent + lambda_color * color)
    if not grad:
        return loss, None

    g = 2.0 * diff / diff.size
    # first maximal index takes the whole subgradient
    g[rows, worst] += lambda_maxabs * np.sign(diff[rows, worst]) / m
    safe = np.where(de > 0, de, 1.0)
    g_lab = np.where((de > 0)[:, None], (lab_pred - lab_gt) / safe[:, None], 0.0)
    g_xyz = np.einsum("mi,mij->mj", g_lab, xyz_to_lab_jacobian(xyz_pred, white))
    g += (lambda_color / m) * (g_xyz @ colors)
    return loss, g
