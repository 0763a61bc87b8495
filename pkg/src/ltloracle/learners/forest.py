"""Random forests: bagged CART trees with per-split feature subsampling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..rng import SplitMix64
from .tree import DTModel, check_xy, grow_tree


@dataclass(frozen=True)
class RFModel:
    trees: tuple[DTModel, ...]
    seeds: tuple[int, ...]

    @cached_property
    def _stacked(self):
        """All trees in one node table; child indices shifted by tree offsets."""
        offsets = np.cumsum([0] + [t.n_nodes for t in self.trees])
        feature = np.concatenate([t.feature for t in self.trees]).astype(np.int64)
        threshold = np.concatenate([t.threshold for t in self.trees]).astype(np.float64)
        left = np.concatenate([np.asarray(t.left) + o for t, o in zip(self.trees, offsets)])
        right = np.concatenate([np.asarray(t.right) + o for t, o in zip(self.trees, offsets)])
        label = np.concatenate([t.label for t in self.trees]).astype(np.int64)
        return offsets[:-1], feature, threshold, left, right, label

    def predict(self, X) -> tuple[np.ndarray, np.ndarray]:
        """Majority vote (a tied vote predicts 1); score is the vote share for 1."""
        X = np.asarray(X, dtype=np.float64)
        roots, feature, threshold, left, right, label = self._stacked
        n_rows = X.shape[0]
        # node[t, r]: current node of tree t for row r
        node = np.repeat(roots[:, None], n_rows, axis=1)
        rows = np.broadcast_to(np.arange(n_rows), node.shape)
        while True:
            f = feature[node]
            inner = f >= 0
            if not inner.any():
                break
            cur = node[inner]
            go_left = X[rows[inner], f[inner]] <= threshold[cur]
            node[inner] = np.where(go_left, left[cur], right[cur])
        votes = label[node].sum(axis=0)
        n = len(self.trees)
        return (2 * votes >= n).astype(np.int64), votes / n


def train_rf(X, y, n_trees: int = 100, max_depth: int = 10, features_per_split: int | None = None,
             seed: int = 0, min_samples_split: int = 2, bootstrap: bool = True) -> RFModel:
    """Tree ``i`` draws its bootstrap sample and feature subsets from seed ``seed + i``.

    ``features_per_split`` defaults to ``ceil(sqrt(d))``. With ``bootstrap``
    off and all features allowed, a one-tree forest is exactly :func:`train_dt`.
    """
    X, y = check_xy(X, y)
    n, d = X.shape
    if n_trees < 1:
        raise ValueError("a forest needs at least one tree")
    if features_per_split is None:
        features_per_split = math.ceil(math.sqrt(d))
    trees, seeds = [], []
    for i in range(n_trees):
        tree_seed = seed + i
        rng = SplitMix64(tree_seed)
        rows = [rng.below(n) for _ in range(n)] if bootstrap else None
        trees.append(grow_tree(X, y, max_depth, min_samples_split, features_per_split, rng, rows))
        seeds.append(tree_seed)
    model = RFModel(tuple(trees), tuple(seeds))
    model._stacked  # built now so prediction timings exclude it
    return model
