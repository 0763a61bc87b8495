from .commands import (
    BenchReport,
    E2EResult,
    bench,
    cmd_bench,
    cmd_features,
    cmd_generate,
    cmd_label,
    cmd_sweep,
    cmd_train_eval,
    generate_instances,
    label_instances,
    run_e2e,
    summary_table,
    sweep,
    train_eval,
)
from .config import DEFAULTS, Config
from .dataset import LabeledInstance, dump_dataset, parse_dataset, read_dataset, write_dataset

__all__ = [
    "BenchReport", "E2EResult", "bench", "cmd_bench", "cmd_features", "cmd_generate",
    "cmd_label", "cmd_sweep", "cmd_train_eval", "generate_instances", "label_instances",
    "run_e2e", "summary_table", "sweep", "train_eval", "DEFAULTS", "Config",
    "LabeledInstance", "dump_dataset", "parse_dataset", "read_dataset", "write_dataset",
]
