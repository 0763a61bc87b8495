"""Binary logistic regression fitted by full-batch gradient descent."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TrainingError
from .tree import check_xy


@dataclass(frozen=True)
class LRModel:
    weights: tuple[float, ...]
    bias: float

    def predict(self, X) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(X, dtype=np.float64) @ np.asarray(self.weights) + self.bias
        score = sigmoid(z)
        return (score >= 0.5).astype(np.int64), score


def sigmoid(z):
    return np.exp(-np.logaddexp(0.0, -z))


def loss_and_grad(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, l2: float = 0.0):
    """Mean binary cross-entropy plus ``l2/2 * |w|^2`` and its gradient.

    The bias is not penalised.
    """
    z = X @ w + b
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (w @ w))
    r = (sigmoid(z) - y) / X.shape[0]
    return loss, X.T @ r + l2 * w, float(r.sum())


def gradient_descent(X, y, lr=0.1, epochs=500, l2=0.0):
    """Returns ``(weights, bias, losses)``; ``losses[i]`` is the loss before step ``i``."""
    X, y = check_xy(X, y)
    y = y.astype(np.float64)
    w = np.zeros(X.shape[1])
    b = 0.0
    losses = []
    for _ in range(epochs):
        loss, gw, gb = loss_and_grad(w, b, X, y, l2)
        if not np.isfinite(loss):
            raise TrainingError("logistic regression diverged (non-finite loss)")
        losses.append(loss)
        w = w - lr * gw
        b = b - lr * gb
    if not (np.all(np.isfinite(w)) and np.isfinite(b)):
        raise TrainingError("logistic regression diverged (non-finite weights)")
    return w, b, losses


def train_lr(X, y, lr: float = 0.1, epochs: int = 500, l2: float = 0.0) -> LRModel:
    w, b, _ = gradient_descent(X, y, lr, epochs, l2)
    return LRModel(tuple(float(v) for v in w), float(b))
