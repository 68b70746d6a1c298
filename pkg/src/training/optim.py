import logging

import numpy as np

logger = logging.getLogger(__name__)

Params = dict[str, np.ndarray]


class Adam:
    """Adam over a dict of named arrays; updates the arrays in place."""

    def __init__(
        self,
        lr: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m: Params = {}
        self.v: Params = {}
        self.t = 0

    def _decay(self, params: Params) -> None:
        pass

    def step(self, params: Params, grads: Params) -> None:
        self.t += 1
        bc1 = 1.0 - self.beta1**self.t
        bc2 = 1.0 - self.beta2**self.t
        self._decay(params)

        for name, p in params.items():
            g = grads[name]
            if name not in self.m:
                self.m[name] = np.zeros_like(p)
                self.v[name] = np.zeros_like(p)
            m, v = self.m[name], self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            p -= (self.lr / bc1) * m / (np.sqrt(v / bc2) + self.eps)


class AdamW(Adam):
    """Adam with decoupled weight decay (applied to every parameter before the moment step)."""

    def __init__(self, lr: float = 1e-3, weight_decay: float = 1e-2, **kwargs):
        super().__init__(lr=lr, **kwargs)
        self.weight_decay = weight_decay

    def _decay(self, params: Params) -> None:
        for p in params.values():
            p *= 1.0 - self.lr * self.weight_decay


def clip_grad_norm(grads: Params, max_norm: float) -> float:
    """Scale all gradients together so their global L2 norm is at most max_norm."""
    total = float(np.sqrt(sum(float(np.sum(g * g)) for g in grads.values())))
    if total > max_norm:
        factor = max_norm / (total + 1e-6)
        for g in grads.values():
            g *= factor
    return total


class ReduceLROnPlateau:
    """Halves (by `factor`) the optimizer rate when the monitored loss stops improving."""

    def __init__(
        self,
        optimizer: Adam,
        factor: float = 0.5,
        patience: int = 200,
        min_lr: float = 1e-6,
        threshold: float = 1e-4,
    ):
        self.optimizer = optimizer
        self.factor = factor
        self.patience = patience
        self.min_lr = min_lr
        self.threshold = threshold
        self.best = np.inf
        self.bad_epochs = 0

    def step(self, loss: float) -> None:
        if loss < self.best * (1.0 - self.threshold):
            self.best = loss
            self.bad_epochs = 0
            return
        self.bad_epochs += 1
        if self.bad_epochs > self.patience:
            new_lr = max(self.optimizer.lr * self.factor, self.min_lr)
            if new_lr < self.optimizer.lr:
                logger.info(f"reducing learning rate to {new_lr:.3g}")
            self.optimizer.lr = new_lr
            self.bad_epochs = 0
