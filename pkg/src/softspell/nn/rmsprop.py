"""RMSprop with a moving average of squared gradients.

    s     <- rho * s + (1 - rho) * g^2
    theta <- theta - lr * g / sqrt(s + epsilon)

Defaults follow the common toolkit settings: lr 0.001, rho 0.9,
epsilon 1e-7.
"""

from __future__ import annotations

import numpy as np

from ..errors import DivergenceError


def rmsprop_update(
    s: np.ndarray, param: np.ndarray, grad: np.ndarray, lr: float, rho: float, eps: float
) -> tuple[np.ndarray, np.ndarray]:
    """One functional update step; returns (new_s, new_param)."""
    if not np.all(np.isfinite(grad)):
        raise DivergenceError("non-finite gradient")
    s = rho * s + (1.0 - rho) * grad * grad
    return s, param - lr * grad / np.sqrt(s + eps)


class RmsProp:
    def __init__(self, lr: float = 1e-3, rho: float = 0.9, epsilon: float = 1e-7):
        self.lr = lr
        self.rho = rho
        self.epsilon = epsilon
        self._s: dict[str, np.ndarray] = {}

    def step(self, model, grads: dict[str, np.ndarray]) -> None:
        """Update every model parameter in place."""
        for name, param in model.param_items():
            g = grads[name]
            s = self._s.get(name)
            if s is None:
                s = np.zeros_like(param)
            s, new = rmsprop_update(s, param, g, self.lr, self.rho, self.epsilon)
            self._s[name] = s
            model.set_param(name, new)
