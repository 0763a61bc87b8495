from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ..errors import MissingTimingError, SchemaMismatchError
from ..features import DIM
from .metrics import accuracy, auc
from .model import TrainedModel
from .split import SplitSpec


@dataclass(frozen=True)
class EvalReport:
    algorithm: str
    train_count: int
    test_count: int
    accuracy: float
    auc: float | None  # None when the test part holds a single class
    split: SplitSpec
    per_record_predict_seconds: float | None = None

    def deterministic_dict(self) -> dict:
        d = asdict(self)
        del d["per_record_predict_seconds"]
        return d

    def without_timing(self) -> "EvalReport":
        return EvalReport(self.algorithm, self.train_count, self.test_count,
                          self.accuracy, self.auc, self.split)


def evaluate(model: TrainedModel, X_test, y_test, train_count: int, split: SplitSpec,
             timing_passes: int = 5) -> EvalReport:
    """Score ``model`` on the test part and time its predictions.

    The per-record time is the wall time of one batch prediction (scaling
    included) divided by the number of test records, taking the median over
    ``timing_passes`` identical passes.
    """
    X_test = np.asarray(X_test, dtype=np.float64)
    y_test = np.asarray(y_test, dtype=np.int64)
    if X_test.shape[0] < 1:
        raise ValueError("empty test set")
    if X_test.shape[1] != DIM or model.schema_version != 1:
        raise SchemaMismatchError(f"test rows have {X_test.shape[1]} features, schema v1 has {DIM}")
    passes = []
    for _ in range(max(1, timing_passes)):
        start = time.perf_counter()
        labels, scores = model.predict(X_test)
        passes.append(time.perf_counter() - start)
    elapsed = float(np.median(passes))
    both = 0 < int(y_test.sum()) < y_test.size
    return EvalReport(
        algorithm=model.algorithm,
        train_count=int(train_count),
        test_count=int(y_test.size),
        accuracy=accuracy(labels, y_test),
        auc=auc(scores, y_test) if both else None,
        split=split,
        per_record_predict_seconds=elapsed / y_test.size,
    )


def timing_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".timing")


def write_report(path, report: EvalReport) -> None:
    """Deterministic fields to ``path``; the measured time to ``path.timing``."""
    Path(path).write_text(json.dumps(report.deterministic_dict(), indent=2, sort_keys=True) + "\n")
    if report.per_record_predict_seconds is not None:
        timing_path(path).write_text(
            json.dumps({"per_record_predict_seconds": report.per_record_predict_seconds}) + "\n"
        )


def report_from_dict(d: dict, seconds=None) -> EvalReport:
    return EvalReport(
        algorithm=d["algorithm"],
        train_count=d["train_count"],
        test_count=d["test_count"],
        accuracy=d["accuracy"],
        auc=d["auc"],
        split=SplitSpec(**d["split"]),
        per_record_predict_seconds=seconds,
    )


def read_report(path, require_timing: bool = False) -> EvalReport:
    d = json.loads(Path(path).read_text())
    seconds = None
    tp = timing_path(path)
    if tp.exists():
        seconds = json.loads(tp.read_text())["per_record_predict_seconds"]
    elif require_timing:
        raise MissingTimingError(f"{tp} is missing; rerun train-eval")
    return report_from_dict(d, seconds)
