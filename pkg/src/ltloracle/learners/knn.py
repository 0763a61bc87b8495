from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError
from .tree import check_xy


@dataclass(frozen=True, eq=False)
class KNNModel:
    X: np.ndarray
    y: np.ndarray
    k: int

    def predict(self, Q) -> tuple[np.ndarray, np.ndarray]:
        """Euclidean k-nearest vote.

        Equal distances favour the lower training row; a tied vote predicts 1.
        The score is the share of positive neighbours.
        """
        Q = np.atleast_2d(np.asarray(Q, dtype=np.float64))
        if Q.shape[1] != self.X.shape[1]:
            raise DimensionMismatchError(f"queries have {Q.shape[1]} features, model {self.X.shape[1]}")
        d2 = ((Q[:, None, :] - self.X[None, :, :]) ** 2).sum(axis=2)
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        pos = self.y[nearest].sum(axis=1)
        return (2 * pos >= self.k).astype(np.int64), pos / self.k


def train_knn(X, y, k: int = 5) -> KNNModel:
    X, y = check_xy(X, y)
    if not 1 <= k <= X.shape[0]:
        raise DimensionMismatchError(f"k={k} outside 1..{X.shape[0]}")
    return KNNModel(X.copy(), y.copy(), int(k))
