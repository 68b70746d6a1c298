"""
Codec training losses and their analytic gradients.

All losses take batches of paired reflectance / illumination spectra of shape
(m, n). Means are per element (over samples and wavelengths or channels).
"""

from dataclasses import dataclass, fields

import numpy as np

from codec import CodecWeights, softplus_grad
from colorimetry import cmf_table
from models.training import LossWeights
from spectral import COSINE_EPS

TERMS = ("e2e", "rec", "code", "col", "alg")


@dataclass
class LossTerms:
    e2e: float = 0.0
    rec: float = 0.0
    code: float = 0.0
    col: float = 0.0
    alg: float = 0.0

    def total(self, lw: LossWeights) -> float:
        return (
            lw.lambda_e2e * self.e2e
            + lw.lambda_rec * self.rec
            + lw.lambda_code * self.code
            + lw.lambda_col * self.col
            + lw.lambda_alg * self.alg
        )

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class Gradients:
    raw_enc: np.ndarray
    raw_dec: np.ndarray

    def as_dict(self) -> dict[str, np.ndarray]:
        return {"raw_enc": self.raw_enc, "raw_dec": self.raw_dec}


def _as_batch(x: np.ndarray) -> np.ndarray:
    return np.atleast_2d(np.asarray(x, dtype=np.float64))


def _check_pairs(r: np.ndarray, l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r, l = _as_batch(r), _as_batch(l)
    if r.shape != l.shape:
        raise ValueError(f"reflectance batch {r.shape} and illumination batch {l.shape} differ")
    return r, l


class _Forward:
    """Intermediate values shared by the loss terms and their gradients."""

    def __init__(self, enc: np.ndarray, dec: np.ndarray, r: np.ndarray, l: np.ndarray):
        self.enc, self.dec = enc, dec
        self.r, self.l = r, l
        self.z_r = r @ enc.T
        self.z_l = l @ enc.T
        self.z_p = self.z_r * self.z_l
        self.s = r * l
        self.s_hat = self.z_p @ dec.T
        self.m, self.n = r.shape


def _cosine_terms(a: np.ndarray, b: np.ndarray):
    na = np.linalg.norm(a, axis=-1)
    nb = np.linalg.norm(b, axis=-1)
    da = np.maximum(na, COSINE_EPS)
    db = np.maximum(nb, COSINE_EPS)
    cos = np.sum(a * b, axis=-1) / (da * db)
    return cos, na, da, db


def _e2e(f: _Forward, grad: bool):
    diff = f.s_hat - f.s
    mse = np.mean(diff**2, axis=-1)
    cos, na, da, db = _cosine_terms(f.s_hat, f.s)
    loss = float(np.mean(mse * (2.0 - cos)))
    if not grad:
        return loss, None
    # norm clamped at eps has zero derivative
    norm_live = (na > COSINE_EPS)[:, None]
    d_cos = f.s / (da * db)[:, None] - np.where(
        norm_live, (cos / (da * np.maximum(na, COSINE_EPS)))[:, None] * f.s_hat, 0.0
    )
    g_s_hat = ((2.0 - cos)[:, None] * 2.0 * diff / f.n - mse[:, None] * d_cos) / f.m
    return loss, g_s_hat


def _rec(f: _Forward, grad: bool):
    loss = 0.0
    g_enc = np.zeros_like(f.enc)
    g_dec = np.zeros_like(f.dec)
    for x, z in ((f.r, f.z_r), (f.l, f.z_l)):
        diff = z @ f.dec.T - x
        loss += float(np.mean(diff**2))
        if grad:
            g = 2.0 * diff / diff.size
            g_dec += g.T @ z
            g_enc += (g @ f.dec).T @ x
    return loss, (g_enc, g_dec)


def _code(f: _Forward, grad: bool):
    target = f.s @ f.enc.T
    diff = f.z_p - target
    loss = float(np.mean(diff**2))
    if not grad:
        return loss, None
    g = 2.0 * diff / diff.size
    g_enc = (g * f.z_l).T @ f.r + (g * f.z_r).T @ f.l - g.T @ f.s
    return loss, g_enc


def _col(f: _Forward, grad: bool):
    t = cmf_table().loss_matrix
    diff = (f.s_hat - f.s) @ t.T
    loss = float(np.mean(diff**2))
    if not grad:
        return loss, None
    return loss, (2.0 * diff / diff.size) @ t


def algebra_penalty(dec: np.ndarray) -> float:
    """
    Hadamard orthogonality plus idempotence of the decoder columns.

    sum_{i != j} |b_i * b_j|^2 / (k (k-1)) + sum_i |b_i * b_i - b_i|^2 / k
    """
    k = dec.shape[1]
    sq = dec * dec
    row = sq.sum(axis=1)
    ortho = float(np.sum(row * row - np.sum(sq * sq, axis=1)))
    idem = float(np.sum((sq - dec) ** 2))
    return ortho / max(k * (k - 1), 1) + idem / k


def algebra_penalty_grad(dec: np.ndarray) -> np.ndarray:
    k = dec.shape[1]
    sq = dec * dec
    row = sq.sum(axis=1, keepdims=True)
    g_ortho = 4.0 * dec * (row - sq) / max(k * (k - 1), 1)
    g_idem = 2.0 * (sq - dec) * (2.0 * dec - 1.0) / k
    return g_ortho + g_idem


def _forward(enc: np.ndarray, dec: np.ndarray, r, l) -> _Forward:
    r, l = _check_pairs(r, l)
    return _Forward(enc, dec, r, l)


def loss_e2e(w: CodecWeights, r: np.ndarray, l: np.ndarray) -> float:
    return _e2e(_forward(w.w_enc, w.w_dec, r, l), grad=False)[0]


def loss_rec(w: CodecWeights, r: np.ndarray, l: np.ndarray) -> float:
    return _rec(_forward(w.w_enc, w.w_dec, r, l), grad=False)[0]


def loss_code(w: CodecWeights, r: np.ndarray, l: np.ndarray) -> float:
    return _code(_forward(w.w_enc, w.w_dec, r, l), grad=False)[0]


def loss_col(w: CodecWeights, r: np.ndarray, l: np.ndarray) -> float:
    return _col(_forward(w.w_enc, w.w_dec, r, l), grad=False)[0]


def loss_alg(w: CodecWeights) -> float:
    return algebra_penalty(w.w_dec)


def matrix_loss_terms(enc: np.ndarray, dec: np.ndarray, r: np.ndarray, l: np.ndarray) -> LossTerms:
    """Loss terms for explicit effective encoder (k, n) and decoder (n, k) matrices."""
    f = _forward(enc, dec, r, l)
    return LossTerms(
        e2e=_e2e(f, False)[0],
        rec=_rec(f, False)[0],
        code=_code(f, False)[0],
        col=_col(f, False)[0],
        alg=algebra_penalty(dec),
    )


def loss_terms(w: CodecWeights, r: np.ndarray, l: np.ndarray) -> LossTerms:
    return matrix_loss_terms(w.w_enc, w.w_dec, r, l)


def total_loss(w: CodecWeights, r: np.ndarray, l: np.ndarray, lw: LossWeights) -> float:
    return loss_terms(w, r, l).total(lw)


def matrix_gradients(
    enc: np.ndarray, dec: np.ndarray, r: np.ndarray, l: np.ndarray, lw: LossWeights
) -> tuple[LossTerms, np.ndarray, np.ndarray]:
    """Loss terms and the gradient of the weighted total w.r.t. the effective matrices."""
    f = _forward(enc, dec, r, l)
    terms = LossTerms()
    g_enc = np.zeros_like(enc)
    g_dec = np.zeros_like(dec)
    g_s_hat = np.zeros_like(f.s_hat)

    terms.e2e, g = _e2e(f, lw.lambda_e2e > 0)
    if g is not None:
        g_s_hat += lw.lambda_e2e * g

    terms.rec, (ge, gd) = _rec(f, lw.lambda_rec > 0)
    if lw.lambda_rec > 0:
        g_enc += lw.lambda_rec * ge
        g_dec += lw.lambda_rec * gd

    terms.code, g = _code(f, lw.lambda_code > 0)
    if g is not None:
        g_enc += lw.lambda_code * g

    terms.col, g = _col(f, lw.lambda_col > 0)
    if g is not None:
        g_s_hat += lw.lambda_col * g

    terms.alg = algebra_penalty(dec)
    if lw.lambda_alg > 0:
        g_dec += lw.lambda_alg * algebra_penalty_grad(dec)

    # back through s_hat = (z_r * z_l) @ dec.T
    g_dec += g_s_hat.T @ f.z_p
    g_z_p = g_s_hat @ dec
    g_enc += (g_z_p * f.z_l).T @ f.r + (g_z_p * f.z_r).T @ f.l
    return terms, g_enc, g_dec


def gradients(
    w: CodecWeights, r: np.ndarray, l: np.ndarray, lw: LossWeights
) -> tuple[LossTerms, Gradients]:
    """Loss terms and the exact gradient of the weighted total w.r.t. the raw weights."""
    terms, g_enc, g_dec = matrix_gradients(w.w_enc, w.w_dec, r, l, lw)
    return terms, Gradients(
        raw_enc=g_enc * softplus_grad(w.raw_enc, w.beta),
        raw_dec=g_dec * softplus_grad(w.raw_dec, w.beta),
    )
