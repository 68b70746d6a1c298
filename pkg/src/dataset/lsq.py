"""
Least squares with one linear equality and box bounds.

    min 0.5 |A x - b|^2   s.t.   c . x = d,   lo <= x <= hi

solved by accelerated projected gradient; the projection onto the feasible set
is exact (a piecewise-linear root search over the equality multiplier).
"""

import logging
from dataclasses import dataclass

import numpy as np

from .types import DatasetError

logger = logging.getLogger(__name__)


class InfeasibleTarget(DatasetError):
    pass


@dataclass(frozen=True)
class LsqResult:
    x: np.ndarray
    residual: float  # |A x - b|
    equality_residual: float
    projected_gradient: float
    iterations: int


def project(y: np.ndarray, c: np.ndarray, d: float, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Euclidean projection of y onto {x : c.x = d, lo <= x <= hi} for c >= 0."""
    # x(mu) = clip(y - mu c, lo, hi); c . x(mu) is non-increasing in mu
    active = c > 0
    if not np.any(active):
        raise InfeasibleTarget("equality has no free variables")
    ya, ca, la, ha = y[active], c[active], lo[active], hi[active]

    knots = np.unique(np.concatenate([(ya - la) / ca, (ya - ha) / ca]))
    values = np.clip(ya[None, :] - knots[:, None] * ca[None, :], la, ha) @ ca
    # values are non-increasing along the sorted knots
    if d > values[0] + 1e-12 * max(1.0, abs(d)) or d < values[-1] - 1e-12 * max(1.0, abs(d)):
        raise InfeasibleTarget(f"equality target {d:.6g} outside [{values[-1]:.6g}, {values[0]:.6g}]")
    i = int(np.searchsorted(-values, -d, side="left"))
    if i == 0:
        mu = knots[0]
    elif i >= len(knots):
        mu = knots[-1]
    else:
        m0, m1 = knots[i - 1], knots[i]
        v0, v1 = values[i - 1], values[i]
        mu = m0 if v0 == v1 else m0 + (v0 - d) * (m1 - m0) / (v0 - v1)

    x = np.clip(y, lo, hi)
    x[active] = np.clip(ya - mu * ca, la, ha)
    return x


def solve(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    d: float,
    lo: np.ndarray,
    hi: np.ndarray,
    x0: np.ndarray | None = None,
    tol: float = 1e-10,
    max_iter: int = 20000,
) -> LsqResult:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    if np.any(c < 0):
        raise DatasetError("equality weights must be non-negative")
    if np.any(lo > hi):
        raise DatasetError("lower bounds exceed upper bounds")
    if not (c @ lo - 1e-12 <= d <= c @ hi + 1e-12):
        raise InfeasibleTarget(f"equality target {d:.6g} unreachable within the bounds")

    lipschitz = float(np.linalg.norm(a, 2) ** 2) or 1.0
    step = 1.0 / lipschitz
    x = project(np.zeros_like(lo) if x0 is None else np.asarray(x0, dtype=np.float64), c, d, lo, hi)
    y, t = x.copy(), 1.0
    f_prev = np.inf
    pg = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        x_new = project(y - step * (a.T @ (a @ y - b)), c, d, lo, hi)
        f_new = 0.5 * float(np.sum((a @ x_new - b) ** 2))
        if f_new > f_prev:
            # adaptive restart
            y, t = x.copy(), 1.0
            continue
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = x_new + ((t - 1.0) / t_new) * (x_new - x)
        x, t, f_prev = x_new, t_new, f_new
        pg = projected_gradient_norm(a, b, c, d, lo, hi, x)
        if pg <= tol:
            break

    result = LsqResult(
        x=x,
        residual=float(np.linalg.norm(a @ x - b)),
        equality_residual=abs(float(c @ x) - d),
        projected_gradient=pg,
        iterations=it,
    )
    if pg > tol:
        logger.debug(f"constrained solve stopped at projected gradient {pg:.3g} after {it} iterations")
    return result


def projected_gradient_norm(a, b, c, d, lo, hi, x) -> float:
    """|x - P(x - grad f(x))|, zero exactly at KKT points."""
    grad = a.T @ (a @ x - b)
    return float(np.linalg.norm(x - project(x - grad, c, d, lo, hi)))
