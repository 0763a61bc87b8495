"""Trained-model container, training dispatch and the model text format.

Model files are line oriented::

    ltloracle-model 1
    algorithm rf
    schema 1
    param features_per_split 5
    ...
    scaler.mean <d floats>
    scaler.std <d floats>
    tree <seed> <node count>
    node <feature> <threshold> <left> <right> <label> <prob>
    ...

KNN bodies hold ``k`` and one ``row <label> <d floats>`` line per training
point; LR bodies hold ``weights`` and ``bias`` lines. Floats are written with
``repr`` so they round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..errors import FormatError, SchemaMismatchError
from ..features import SCHEMA_VERSION, Scaler, apply_scaler
from .forest import RFModel, train_rf
from .knn import KNNModel, train_knn
from .logistic import LRModel, train_lr
from .tree import DTModel, train_dt

ALGORITHMS = ("rf", "knn", "dt", "lr")

DEFAULT_PARAMS = {
    "dt": {"max_depth": 10, "min_samples_split": 2},
    "rf": {"n_trees": 100, "max_depth": 10, "features_per_split": None, "seed": 0},
    "knn": {"k": 5},
    "lr": {"lr": 0.1, "epochs": 500, "l2": 0.0},
}

_TRAINERS = {"dt": train_dt, "rf": train_rf, "knn": train_knn, "lr": train_lr}

Estimator = Union[DTModel, RFModel, KNNModel, LRModel]


@dataclass(frozen=True, eq=False)
class TrainedModel:
    algorithm: str
    estimator: Estimator
    scaler: Scaler
    params: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def predict(self, X_raw) -> tuple[np.ndarray, np.ndarray]:
        """Labels and scores for unscaled feature rows; higher score = Holds."""
        return self.estimator.predict(apply_scaler(self.scaler, X_raw))


def resolve_params(algorithm: str, params: dict | None = None) -> dict:
    if algorithm not in DEFAULT_PARAMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    merged = dict(DEFAULT_PARAMS[algorithm])
    for key, value in (params or {}).items():
        if key in merged:
            merged[key] = value
    return merged


def train(algorithm: str, X_scaled, y, scaler: Scaler, params: dict | None = None) -> TrainedModel:
    params = resolve_params(algorithm, params)
    if algorithm == "rf" and params["features_per_split"] is None:
        params = dict(params, features_per_split=int(np.ceil(np.sqrt(np.shape(X_scaled)[1]))))
    estimator = _TRAINERS[algorithm](X_scaled, y, **params)
    return TrainedModel(algorithm, estimator, scaler, params)


def _floats(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def _dump_tree(tree: DTModel, seed: int, out: list[str]) -> None:
    out.append(f"tree {seed} {tree.n_nodes}")
    for i in range(tree.n_nodes):
        out.append(
            f"node {tree.feature[i]} {float(tree.threshold[i])!r} {tree.left[i]} "
            f"{tree.right[i]} {tree.label[i]} {float(tree.prob[i])!r}"
        )


def dump_model(model: TrainedModel) -> str:
    out = [
        "ltloracle-model 1",
        f"algorithm {model.algorithm}",
        f"schema {model.schema_version}",
    ]
    for key in sorted(model.params):
        out.append(f"param {key} {model.params[key]!r}")
    out.append("scaler.mean " + _floats(model.scaler.mean))
    out.append("scaler.std " + _floats(model.scaler.std))
    est = model.estimator
    if isinstance(est, DTModel):
        _dump_tree(est, 0, out)
    elif isinstance(est, RFModel):
        for tree, seed in zip(est.trees, est.seeds):
            _dump_tree(tree, seed, out)
    elif isinstance(est, KNNModel):
        out.append(f"k {est.k}")
        for row, label in zip(est.X, est.y):
            out.append(f"row {int(label)} " + _floats(row))
    else:
        out.append("weights " + _floats(est.weights))
        out.append(f"bias {float(est.bias)!r}")
    return "\n".join(out) + "\n"


def _parse_value(text: str):
    if text == "None":
        return None
    if text in ("True", "False"):
        return text == "True"
    try:
        return int(text)
    except ValueError:
        return float(text)


def load_model(text: str) -> TrainedModel:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["ltloracle-model", "1"]:
        raise FormatError("not an ltloracle model file (version 1)")
    try:
        algorithm = None
        schema = None
        params = {}
        mean = std = None
        trees: list[tuple[int, list]] = []
        knn_rows, knn_k, weights, bias = [], None, None, None
        for ln in lines[1:]:
            tag = ln[0]
            if tag == "algorithm":
                algorithm = ln[1]
            elif tag == "schema":
                schema = int(ln[1])
            elif tag == "param":
                params[ln[1]] = _parse_value(ln[2])
            elif tag == "scaler.mean":
                mean = tuple(float(v) for v in ln[1:])
            elif tag == "scaler.std":
                std = tuple(float(v) for v in ln[1:])
            elif tag == "tree":
                trees.append((int(ln[1]), []))
            elif tag == "node":
                trees[-1][1].append(ln[1:])
            elif tag == "k":
                knn_k = int(ln[1])
            elif tag == "row":
                knn_rows.append(ln[1:])
            elif tag == "weights":
                weights = tuple(float(v) for v in ln[1:])
            elif tag == "bias":
                bias = float(ln[1])
            else:
                raise FormatError(f"unknown model line {' '.join(ln)!r}")
        if schema != SCHEMA_VERSION:
            raise SchemaMismatchError(f"model schema {schema}, expected {SCHEMA_VERSION}")
        scaler = Scaler(mean, std)

        def build_tree(rows) -> DTModel:
            cols = list(zip(*rows)) if rows else [()] * 6
            return DTModel(
                feature=tuple(int(v) for v in cols[0]),
                threshold=tuple(float(v) for v in cols[1]),
                left=tuple(int(v) for v in cols[2]),
                right=tuple(int(v) for v in cols[3]),
                label=tuple(int(v) for v in cols[4]),
                prob=tuple(float(v) for v in cols[5]),
            )

        if algorithm == "dt":
            est = build_tree(trees[0][1])
        elif algorithm == "rf":
            est = RFModel(tuple(build_tree(r) for _, r in trees), tuple(s for s, _ in trees))
        elif algorithm == "knn":
            X = np.asarray([[float(v) for v in r[1:]] for r in knn_rows], dtype=np.float64)
            y = np.asarray([int(r[0]) for r in knn_rows], dtype=np.int64)
            est = KNNModel(X, y, knn_k)
        elif algorithm == "lr":
            est = LRModel(weights, bias)
        else:
            raise FormatError(f"unknown algorithm {algorithm!r}")
    except (IndexError, ValueError, TypeError) as exc:
        raise FormatError(f"malformed model file: {exc}") from exc
    return TrainedModel(algorithm, est, scaler, params, schema)
