"""CART decision trees with Gini impurity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError
from ..rng import SplitMix64

_EPS = 1e-12


@dataclass(frozen=True)
class DTModel:
    """Flat node table, root at 0; ``feature[i] == -1`` marks a leaf."""

    feature: tuple[int, ...]
    threshold: tuple[float, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    label: tuple[int, ...]
    prob: tuple[float, ...]

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def depth(self) -> int:
        best = 0
        stack = [(0, 0)]
        while stack:
            i, d = stack.pop()
            best = max(best, d)
            if self.feature[i] >= 0:
                stack += [(self.left[i], d + 1), (self.right[i], d + 1)]
        return best

    def _leaves(self, X: np.ndarray) -> np.ndarray:
        feature = np.asarray(self.feature)
        threshold = np.asarray(self.threshold)
        left = np.asarray(self.left)
        right = np.asarray(self.right)
        node = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.arange(X.shape[0])
        while True:
            f = feature[node]
            inner = f >= 0
            if not inner.any():
                return node
            r = rows[inner]
            go_left = X[r, f[inner]] <= threshold[node[inner]]
            node[r] = np.where(go_left, left[node[inner]], right[node[inner]])

    def predict(self, X) -> tuple[np.ndarray, np.ndarray]:
        """``(labels, scores)`` where the score is the leaf's positive fraction."""
        leaves = self._leaves(np.asarray(X, dtype=np.float64))
        return np.asarray(self.label)[leaves], np.asarray(self.prob)[leaves]


def check_xy(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DimensionMismatchError(f"X has shape {X.shape}, y has shape {y.shape}")
    if X.shape[0] < 1:
        raise DimensionMismatchError("training set is empty")
    if not np.isin(y, (0, 1)).all():
        raise DimensionMismatchError("labels must be 0 or 1")
    return X, y


def _best_split(X, y, idx, features):
    """Highest Gini decrease over ``features``; first wins among equals.

    A zero decrease is still a split: impure nodes keep splitting (XOR needs it).
    """
    n = idx.size
    pos = int(y[idx].sum())
    parent = 1.0 - (pos / n) ** 2 - ((n - pos) / n) ** 2
    best = (-np.inf, -1, 0.0)
    counts = np.arange(1, n)
    for f in features:
        x = X[idx, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        ys = y[idx][order]
        valid = xs[:-1] < xs[1:]
        if not valid.any():
            continue
        lp = np.cumsum(ys)[:-1]
        rp = pos - lp
        nl = counts
        nr = n - counts
        gl = 1.0 - (lp / nl) ** 2 - ((nl - lp) / nl) ** 2
        gr = 1.0 - (rp / nr) ** 2 - ((nr - rp) / nr) ** 2
        gain = parent - (nl * gl + nr * gr) / n
        gain[~valid] = -np.inf
        i = int(np.argmax(gain))
        if gain[i] > best[0] + _EPS:
            a, b = xs[i], xs[i + 1]
            thr = (a + b) / 2.0
            if not a <= thr < b:
                thr = a
            best = (float(gain[i]), int(f), float(thr))
    return best


def grow_tree(X, y, max_depth=10, min_samples_split=2, features_per_split=None,
              rng: SplitMix64 | None = None, rows=None) -> DTModel:
    """Greedy CART. ``features_per_split`` draws that many features per node."""
    d = X.shape[1]
    idx0 = np.arange(X.shape[0]) if rows is None else np.asarray(rows, dtype=np.int64)
    table = {k: [] for k in ("feature", "threshold", "left", "right", "label", "prob")}

    def new_node(idx):
        n = idx.size
        pos = int(y[idx].sum())
        table["feature"].append(-1)
        table["threshold"].append(0.0)
        table["left"].append(-1)
        table["right"].append(-1)
        table["label"].append(1 if 2 * pos >= n else 0)
        table["prob"].append(pos / n)
        return len(table["feature"]) - 1

    root = new_node(idx0)
    stack = [(root, idx0, 0)]
    while stack:
        node, idx, depth = stack.pop()
        pos = int(y[idx].sum())
        if depth >= max_depth or idx.size < min_samples_split or pos in (0, idx.size):
            continue
        if features_per_split is None or features_per_split >= d:
            features = range(d)
        else:
            features = sorted(rng.sample(range(d), features_per_split))
        gain, f, thr = _best_split(X, y, idx, features)
        if f < 0:
            continue
        mask = X[idx, f] <= thr
        li, ri = idx[mask], idx[~mask]
        left = new_node(li)
        right = new_node(ri)
        table["feature"][node] = f
        table["threshold"][node] = thr
        table["left"][node] = left
        table["right"][node] = right
        # right first on the stack so the left subtree is split first
        stack.append((right, ri, depth + 1))
        stack.append((left, li, depth + 1))
    return DTModel(**{k: tuple(v) for k, v in table.items()})


def train_dt(X, y, max_depth: int = 10, min_samples_split: int = 2) -> DTModel:
    X, y = check_xy(X, y)
    return grow_tree(X, y, max_depth, min_samples_split)
