"""Experiment steps: generate, label, featurize, train/evaluate, bench, sweep, e2e.

Each ``cmd_*`` function reads and writes files; the helpers they share
(``label_instances``, ``train_eval``, ``sweep``) work in memory.
"""

from __future__ import annotations

import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from ..checker.ndfs import check
from ..errors import (
    ExternalToolError,
    LtlOracleError,
    MissingTimingError,
    ResourceLimitError,
    SingleClassError,
)
from ..features import feature_matrix, fit_scaler, write_feature_csv
from ..learners.evaluate import EvalReport, evaluate, read_report, write_report
from ..learners.evaluate import timing_path as report_timing_path
from ..learners.model import ALGORITHMS, TrainedModel, dump_model, train
from ..learners.split import SplitSpec, split_indices
from ..logic.formula import formula_length
from ..logic.generate import default_alphabet, random_formula, random_kripke
from ..smv import external_check, resolve_binary
from .config import Config
from .dataset import LabeledInstance, read_dataset, write_dataset

log = logging.getLogger(__name__)

ALGORITHM_TITLES = {"rf": "RF", "knn": "KNN", "dt": "DT", "lr": "LR"}


# -- generation ---------------------------------------------------------------

def generate_instances(cfg: Config, master_seed: int | None = None, count: int | None = None):
    master = cfg["seed"] if master_seed is None else master_seed
    count = cfg["count"] if count is None else count
    if count < 1:
        raise LtlOracleError("count must be >= 1")
    alphabet = default_alphabet(cfg["ap_count"])
    out = []
    for i in range(count):
        spec = cfg.gen_spec(master + i)
        out.append(LabeledInstance(i, master + i, random_kripke(spec, alphabet), random_formula(spec, alphabet)))
    return out


def cmd_generate(cfg: Config, out_path) -> list[LabeledInstance]:
    instances = generate_instances(cfg)
    write_dataset(out_path, instances)
    return instances


# -- labeling -------------------------------------------------------------------

def _label_one(job):
    """Worker: returns ``(index, verdict, seconds, labeler, error)``."""
    inst, backend, cfg = job
    use_external = backend == "external" or (
        backend == "auto"
        and formula_length(inst.formula) > cfg["builtin_max_length"]
        and resolve_binary(cfg["nusmv"] or None) is not None
    )
    try:
        if use_external:
            verdict, seconds = external_check(
                inst.kripke, inst.formula, cfg["nusmv"] or None, cfg["timeout"], cfg["keep_temps"]
            )
            return inst.index, verdict, seconds, "external", None
        start = time.perf_counter()
        verdict = check(inst.kripke, inst.formula, cfg["state_cap"])
        return inst.index, verdict, time.perf_counter() - start, "builtin", None
    except (ResourceLimitError, ExternalToolError) as exc:
        return inst.index, None, None, None, f"{type(exc).__name__}: {exc}"


@dataclass
class LabelSummary:
    labeled: int
    failed: int
    holds: int
    failures: list[str]

    def lines(self) -> list[str]:
        out = [f"labeled: {self.labeled}", f"failed: {self.failed}"]
        out.append(f"holds: {self.holds}/{self.labeled}")
        return out


def label_instances(instances, cfg: Config, backend: str | None = None, workers: int | None = None):
    backend = backend or cfg["backend"]
    if backend not in ("builtin", "external", "auto"):
        raise LtlOracleError(f"unknown backend {backend!r}")
    workers = cfg["workers"] if workers is None else workers
    jobs = [(inst, backend, dict(cfg)) for inst in instances]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_label_one, jobs, chunksize=4))
    else:
        results = [_label_one(job) for job in jobs]
    by_index = {inst.index: inst for inst in instances}
    labeled, failures = [], []
    for index, verdict, seconds, labeler, error in results:
        if error is not None:
            failures.append(f"instance {index}: {error}")
            continue
        inst = by_index[index]
        labeled.append(LabeledInstance(inst.index, inst.seed, inst.kripke, inst.formula,
                                       verdict, seconds, labeler))
    if not labeled:
        raise LtlOracleError(f"all {len(instances)} instances failed to label")
    summary = LabelSummary(len(labeled), len(failures), sum(i.label for i in labeled), failures)
    return labeled, summary


def cmd_label(cfg: Config, in_path, out_path, backend=None, workers=None) -> LabelSummary:
    labeled, summary = label_instances(read_dataset(in_path), cfg, backend, workers)
    write_dataset(out_path, labeled)
    return summary


# -- features -------------------------------------------------------------------

def dataset_arrays(instances) -> tuple[np.ndarray, np.ndarray]:
    X = feature_matrix((i.kripke, i.formula) for i in instances)
    y = np.asarray([i.label for i in instances], dtype=np.int64)
    return X, y


def cmd_features(dataset_path, out_csv) -> None:
    X, y = dataset_arrays(read_dataset(dataset_path))
    write_feature_csv(out_csv, X, y)


# -- training and evaluation --------------------------------------------------------

def check_trainable(y: np.ndarray) -> None:
    if y.size < 10:
        raise LtlOracleError(f"need at least 10 labeled records, have {y.size}")
    pos = int(y.sum())
    if pos in (0, y.size):
        which = "Holds" if pos else "Violated"
        raise SingleClassError(
            f"all {y.size} labeled instances are {which}; nothing to learn. "
            "Try another --seed or change the generation parameters."
        )


def train_eval(X, y, algorithm: str, split: SplitSpec, params: dict | None = None
               ) -> tuple[EvalReport, TrainedModel]:
    """Split, fit the scaler on the training part only, train, evaluate."""
    train_idx, test_idx = split_indices(len(y), split)
    scaler = fit_scaler(X[train_idx])
    model = train(algorithm, scaler.apply(X[train_idx]), y[train_idx], scaler, params)
    report = evaluate(model, X[test_idx], y[test_idx], len(train_idx), split)
    return report, model


def cmd_train_eval(cfg: Config, dataset_path, algorithm: str, out_report, out_model=None) -> EvalReport:
    X, y = dataset_arrays(read_dataset(dataset_path))
    check_trainable(y)
    split = SplitSpec(cfg["fraction"], cfg["split_seed"])
    report, model = train_eval(X, y, algorithm, split, cfg.algorithm_params(algorithm))
    write_report(out_report, report)
    if out_model is not None:
        Path(out_model).write_text(dump_model(model))
    return report


# -- benchmark --------------------------------------------------------------------

def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class BenchReport:
    algorithm: str
    formula_length_class: str
    t1_mean_seconds: float
    t2_mean_seconds: float
    ratio_t2_over_t1: float
    ratio_t1_over_t2: int

    @classmethod
    def from_means(cls, algorithm: str, length_class: str, t1: float, t2: float) -> "BenchReport":
        if not (t1 > 0 and t2 > 0):
            raise MissingTimingError("t1 and t2 must both be positive")
        return cls(algorithm, length_class, t1, t2, t2 / t1, round_half_up(t1 / t2))

    def percent(self) -> str:
        """t2/t1 as a percentage with two significant digits, e.g. ``0.2%``."""
        return f"{self.ratio_t2_over_t1 * 100:.2g}%"


def length_class(instances) -> str:
    lengths = {formula_length(i.formula) for i in instances}
    return str(lengths.pop()) if len(lengths) == 1 else "mixed"


def bench(instances, report: EvalReport) -> BenchReport:
    seconds = [i.label_seconds for i in instances]
    if not seconds or any(s is None for s in seconds):
        raise MissingTimingError("dataset lacks labeling times (missing .timing sidecar?)")
    if report.per_record_predict_seconds is None:
        raise MissingTimingError("evaluation report lacks prediction time (missing .timing sidecar?)")
    return BenchReport.from_means(
        report.algorithm, length_class(instances),
        float(np.mean(seconds)), report.per_record_predict_seconds,
    )


def write_bench(path, b: BenchReport) -> None:
    Path(path).write_text(json.dumps(asdict(b), indent=2, sort_keys=True) + "\n")


def cmd_bench(dataset_path, report_path, out_path=None) -> BenchReport:
    b = bench(read_dataset(dataset_path), read_report(report_path, require_timing=True))
    if out_path is not None:
        write_bench(out_path, b)
    return b


# -- sweep ----------------------------------------------------------------------------

def _rank_key(report: EvalReport):
    auc = -1.0 if report.auc is None else report.auc
    return (-report.accuracy, -auc, report.split.seed, report.split.fraction)


def sweep(X, y, algorithm: str, fractions, seeds, params=None) -> tuple[EvalReport, list[EvalReport]]:
    """Every (fraction, seed) cell; best = max accuracy, then max AUC, then smallest seed."""
    if not fractions or not seeds:
        raise LtlOracleError("sweep grids must be nonempty")
    grid = []
    for fraction in fractions:
        for seed in seeds:
            report, _ = train_eval(X, y, algorithm, SplitSpec(fraction, seed), params)
            grid.append(report)
    return min(grid, key=_rank_key), grid


GRID_COLUMNS = ("algorithm", "fraction", "seed", "train_count", "test_count", "accuracy", "auc")


def write_grid(path, grid: list[EvalReport]) -> None:
    rows = [",".join(GRID_COLUMNS)]
    times = ["fraction,seed,per_record_predict_seconds"]
    for r in grid:
        auc = "" if r.auc is None else repr(r.auc)
        rows.append(f"{r.algorithm},{r.split.fraction!r},{r.split.seed},{r.train_count},"
                    f"{r.test_count},{r.accuracy!r},{auc}")
        times.append(f"{r.split.fraction!r},{r.split.seed},{r.per_record_predict_seconds!r}")
    Path(path).write_text("\n".join(rows) + "\n")
    report_timing_path(path).write_text("\n".join(times) + "\n")


def cmd_sweep(cfg: Config, dataset_path, algorithm: str, out_report, out_grid) -> EvalReport:
    X, y = dataset_arrays(read_dataset(dataset_path))
    check_trainable(y)
    best, grid = sweep(X, y, algorithm, cfg.list_of("fractions", float),
                       cfg.list_of("sweep_seeds", int), cfg.algorithm_params(algorithm))
    write_report(out_report, best)
    write_grid(out_grid, grid)
    return best


# -- end to end ---------------------------------------------------------------------------

@dataclass
class E2EResult:
    master_seed: int
    instances: list[LabeledInstance]
    label_summary: LabelSummary
    best: dict[str, EvalReport]
    benches: dict[str, BenchReport]

    @property
    def prevalence(self) -> float:
        """Share of the majority class in the labeled dataset."""
        holds = self.label_summary.holds / self.label_summary.labeled
        return max(holds, 1.0 - holds)


def summary_table(best: dict[str, EvalReport], benches: dict[str, BenchReport] | None = None,
                  with_timing: bool = True) -> str:
    """Results table: one row per metric, one column per algorithm."""
    algs = [a for a in ALGORITHMS if a in best]

    def fmt_auc(r):
        return "n/a" if r.auc is None else f"{r.auc:.4f}"

    rows = [
        ("Training record #", [str(best[a].train_count) for a in algs]),
        ("Testing record #", [str(best[a].test_count) for a in algs]),
    ]
    if with_timing:
        rows.append(("Running time per record (in second)",
                     [f"{best[a].per_record_predict_seconds:.6f}" for a in algs]))
    rows += [
        ("Prediction Accuracy", [f"{best[a].accuracy:.4f}" for a in algs]),
        ("AUC", [fmt_auc(best[a]) for a in algs]),
        ("Seed #", [str(best[a].split.seed) for a in algs]),
        ("Fraction", [f"{best[a].split.fraction:.2f}" for a in algs]),
    ]
    if with_timing and benches:
        rows += [
            ("t1 mean checking time (s)", [f"{benches[a].t1_mean_seconds:.6f}" for a in algs]),
            ("t2/t1", [benches[a].percent() for a in algs]),
            ("t1/t2", [str(benches[a].ratio_t1_over_t2) for a in algs]),
        ]
    header = ("ML Algorithms", [ALGORITHM_TITLES[a] for a in algs])
    width = max(len(name) for name, _ in [header, *rows])
    cols = [max(len(header[1][j]), *(len(r[1][j]) for r in rows)) for j in range(len(algs))]
    lines = []
    for name, cells in [header, *rows]:
        lines.append(name.ljust(width) + "  " + "  ".join(c.rjust(w) for c, w in zip(cells, cols)))
    return "\n".join(lines) + "\n"


def run_e2e(cfg: Config, outdir=None) -> E2EResult:
    """Generate, label, sweep every configured algorithm, benchmark.

    When more than ``balance_threshold`` of the labels fall in one class the
    run warns and, with ``rebalance`` on, retries with a shifted master seed.
    """
    master = cfg["seed"]
    shift = 1_000_003
    for attempt in range(cfg["rebalance_attempts"] + 1):
        instances = generate_instances(cfg, master)
        labeled, summary = label_instances(instances, cfg)
        share = summary.holds / summary.labeled
        skewed = max(share, 1 - share) > cfg["balance_threshold"]
        if not skewed:
            break
        log.warning("labels are %.1f%% Holds (master seed %d)", 100 * share, master)
        if not cfg["rebalance"] or attempt == cfg["rebalance_attempts"]:
            break
        master += shift
    X, y = dataset_arrays(labeled)
    check_trainable(y)

    fractions = cfg.list_of("fractions", float)
    seeds = cfg.list_of("sweep_seeds", int)
    best, grids, benches = {}, {}, {}
    for algorithm in cfg.list_of("algorithms"):
        best[algorithm], grids[algorithm] = sweep(X, y, algorithm, fractions, seeds,
                                                  cfg.algorithm_params(algorithm))
        benches[algorithm] = bench(labeled, best[algorithm])
    result = E2EResult(master, labeled, summary, best, benches)

    if outdir is not None:
        out = Path(outdir)
        out.mkdir(parents=True, exist_ok=True)
        write_dataset(out / "instances.txt", instances)
        write_dataset(out / "dataset.txt", labeled)
        write_feature_csv(out / "features.csv", X, y)
        for algorithm in best:
            write_report(out / f"best_{algorithm}.json", best[algorithm])
            write_grid(out / f"grid_{algorithm}.csv", grids[algorithm])
            write_bench(out / f"bench_{algorithm}.json.timing", benches[algorithm])
        (out / "summary.txt").write_text(
            f"master seed {master}\n" + "\n".join(summary.lines()) + "\n\n"
            + summary_table(best, with_timing=False)
        )
        (out / "summary.txt.timing").write_text(summary_table(best, benches))
    return result
