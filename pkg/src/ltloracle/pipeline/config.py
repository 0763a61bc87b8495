"""Flat ``key = value`` experiment configuration.

Every key doubles as a CLI flag (``edge_density`` -> ``--edge-density``);
command-line values override the file, which overrides the defaults below.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import FormatError
from ..logic.generate import DEFAULT_OPERATOR_WEIGHTS, GenSpec

DEFAULTS: dict[str, object] = {
    "seed": 1,
    "count": 200,
    "formula_length": 15,
    "state_min": 2,
    "state_max": 5,
    "ap_count": 2,
    "edge_density": 0.35,
    "init_probability": 0.2,
    "label_probability": 0.5,
    "operator_weights": ",".join(f"{k}:{v}" for k, v in DEFAULT_OPERATOR_WEIGHTS.items()),
    "backend": "builtin",
    "builtin_max_length": 50,
    "nusmv": "",
    "timeout": 600.0,
    "keep_temps": False,
    "workers": 1,
    "state_cap": 2_000_000,
    "algorithms": "rf,knn,dt,lr",
    "fractions": "0.88",
    "sweep_seeds": "1,2,3,4,5",
    "fraction": 0.88,
    "split_seed": 1,
    "balance_threshold": 0.9,
    "rebalance": True,
    "rebalance_attempts": 5,
    "dt.max_depth": 10,
    "dt.min_samples_split": 2,
    "rf.n_trees": 100,
    "rf.max_depth": 10,
    "rf.features_per_split": 0,
    "rf.seed": 0,
    "knn.k": 5,
    "lr.lr": 0.1,
    "lr.epochs": 500,
    "lr.l2": 0.0,
}


def _coerce(key: str, value):
    default = DEFAULTS[key]
    if isinstance(value, str):
        value = value.strip()
        if isinstance(default, bool):
            low = value.lower()
            if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
                raise FormatError(f"{key}: expected a boolean, got {value!r}")
            return low in ("1", "true", "yes", "on")
        try:
            if isinstance(default, int):
                return int(value)
            if isinstance(default, float):
                return float(value)
        except ValueError as exc:
            raise FormatError(f"{key}: {exc}") from exc
        return value
    return value


class Config(dict):
    @classmethod
    def load(cls, path=None, overrides: dict | None = None) -> "Config":
        cfg = cls(DEFAULTS)
        if path is not None:
            for n, raw in enumerate(Path(path).read_text().splitlines(), start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                key = key.strip()
                if not sep or key not in DEFAULTS:
                    raise FormatError(f"{path}:{n}: unknown or malformed entry {raw.strip()!r}")
                cfg[key] = _coerce(key, value)
        for key, value in (overrides or {}).items():
            if value is not None:
                cfg[key] = _coerce(key, value)
        return cfg

    def dump(self) -> str:
        return "".join(f"{k} = {_show(self[k])}\n" for k in DEFAULTS)

    def gen_spec(self, seed: int) -> GenSpec:
        return GenSpec(
            seed=seed,
            state_range=(self["state_min"], self["state_max"]),
            ap_count=self["ap_count"],
            edge_density=self["edge_density"],
            formula_length=self["formula_length"],
            operator_weights=parse_weights(self["operator_weights"]),
            init_probability=self["init_probability"],
            label_probability=self["label_probability"],
        )

    def algorithm_params(self, algorithm: str) -> dict:
        prefix = algorithm + "."
        params = {k[len(prefix):]: v for k, v in self.items() if k.startswith(prefix)}
        if algorithm == "rf" and not params.get("features_per_split"):
            params["features_per_split"] = None
        return params

    def list_of(self, key: str, kind=str) -> list:
        return [kind(x) for x in str(self[key]).split(",") if x.strip()]


def _show(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def parse_weights(text: str) -> dict[str, float]:
    weights = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, _, w = item.partition(":")
        try:
            weights[name.strip()] = float(w)
        except ValueError as exc:
            raise FormatError(f"bad operator weight {item!r}") from exc
    return weights
