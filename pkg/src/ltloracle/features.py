"""Fixed-width numeric encoding of ``(K, f)`` pairs.

Schema v1, 24 features in this order:

====  ======================  ===================================================
 idx  name                    meaning
====  ======================  ===================================================
   0  k_states                number of states
   1  k_edges                 number of transitions
   2  k_density               edges / states**2
   3  k_initial               number of initial states
   4  k_outdeg_mean           mean out-degree
   5  k_outdeg_min            minimum out-degree
   6  k_outdeg_max            maximum out-degree
 7-10 k_ap0_freq..k_ap3_freq  fraction of states labelled with the i-th alphabet
                              name; alphabets beyond 4 names are truncated,
                              shorter ones padded with 0
  11  k_self_loops            number of self-loops
  12  f_length                AST node count
  13  f_depth                 AST depth (a lone atom has depth 1)
14-22 f_n_not..f_n_release    occurrences of ! & | -> X F G U R
  23  f_atoms                 atom occurrences
====  ======================  ===================================================

Everything is a graph or tree statistic, so renumbering states or renaming
propositions (keeping their order) leaves the vector unchanged.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import SchemaMismatchError
from .logic.formula import (
    And,
    Atom,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    Until,
    formula_depth,
    iter_nodes,
)
from .logic.kripke import KripkeStructure

SCHEMA_VERSION = 1
AP_SLOTS = 4
OPERATOR_KINDS = (Not, And, Or, Implies, Next, Finally, Globally, Until, Release)

FEATURE_NAMES = (
    "k_states", "k_edges", "k_density", "k_initial",
    "k_outdeg_mean", "k_outdeg_min", "k_outdeg_max",
    *(f"k_ap{i}_freq" for i in range(AP_SLOTS)),
    "k_self_loops",
    "f_length", "f_depth",
    "f_n_not", "f_n_and", "f_n_or", "f_n_implies", "f_n_next",
    "f_n_finally", "f_n_globally", "f_n_until", "f_n_release",
    "f_atoms",
)
DIM = len(FEATURE_NAMES)
assert DIM == 24


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]
    schema_version: int = SCHEMA_VERSION

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype or np.float64)


def extract(k: KripkeStructure, f: Formula) -> FeatureVector:
    n = k.n_states
    degrees = [len(succ) for succ in k.transitions]
    edges = sum(degrees)
    freqs = [sum(a in lab for lab in k.labels) / n for a in k.alphabet[:AP_SLOTS]]
    freqs += [0.0] * (AP_SLOTS - len(freqs))
    self_loops = sum(s in succ for s, succ in enumerate(k.transitions))

    counts = dict.fromkeys(OPERATOR_KINDS, 0)
    length = 0
    atoms = 0
    for node in iter_nodes(f):
        length += 1
        kind = type(node)
        if kind in counts:
            counts[kind] += 1
        elif kind is Atom:
            atoms += 1

    values = [
        n, edges, edges / (n * n), len(k.initial),
        edges / n, min(degrees), max(degrees),
        *freqs,
        self_loops,
        length, formula_depth(f),
        *(counts[c] for c in OPERATOR_KINDS),
        atoms,
    ]
    return FeatureVector(tuple(float(v) for v in values))


def feature_matrix(pairs) -> np.ndarray:
    rows = [extract(k, f).values for k, f in pairs]
    return np.asarray(rows, dtype=np.float64).reshape(len(rows), DIM)


@dataclass(frozen=True)
class Scaler:
    mean: tuple[float, ...]
    std: tuple[float, ...]

    def apply(self, X) -> np.ndarray:
        return apply_scaler(self, X)


def fit_scaler(vectors) -> Scaler:
    """Per-feature mean and population std; zero std is replaced by 1."""
    X = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    if X.shape[0] < 1:
        raise ValueError("fit_scaler needs at least one vector")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std[std == 0] = 1.0
    return Scaler(tuple(float(v) for v in mean), tuple(float(v) for v in std))


def apply_scaler(scaler: Scaler, vectors) -> np.ndarray:
    X = np.asarray(vectors, dtype=np.float64)
    return (X - np.asarray(scaler.mean)) / np.asarray(scaler.std)


def write_feature_csv(path, X: np.ndarray, labels: Sequence[int]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(FEATURE_NAMES) + ",label\n")
        for row, y in zip(X, labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{int(y)}\n")


def read_feature_csv(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if tuple(header[:-1]) != FEATURE_NAMES or header[-1] != "label":
            raise SchemaMismatchError(f"{path}: not a schema v{SCHEMA_VERSION} feature CSV")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    X = np.asarray([[float(v) for v in r[:-1]] for r in rows], dtype=np.float64).reshape(len(rows), DIM)
    y = np.asarray([int(r[-1]) for r in rows], dtype=np.int64)
    return X, y
