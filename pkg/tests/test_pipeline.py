import json
from pathlib import Path

import numpy as np
import pytest

from ltloracle.checker import Lasso, Verdict, check_reference
from ltloracle.errors import FormatError, MissingTimingError, SingleClassError
from ltloracle.learners import ALGORITHMS, EvalReport, SplitSpec
from ltloracle.logic import KripkeStructure, formula_length, parse_ltl
from ltloracle.pipeline import commands
from ltloracle.pipeline.cli import run
from ltloracle.pipeline.config import DEFAULTS, Config
from ltloracle.pipeline.dataset import (
    LabeledInstance,
    dump_dataset,
    parse_dataset,
    read_dataset,
    write_dataset,
)

FIXTURES = Path(__file__).parent / "fixtures"
HAND_EXPECTED = [True, False, True, False, True, True, False, False, True, True]


def separable_instances(n=60):
    """Single-state models hold G p0, two-state ones violate it."""
    holds = KripkeStructure.build([[0]], [{"p0"}], alphabet=["p0", "p1"])
    fails = KripkeStructure.build([[1], [0]], [{"p0"}, set()], alphabet=["p0", "p1"])
    f = parse_ltl("G p0")
    out = []
    for i in range(n):
        k = holds if i % 2 else fails
        out.append(LabeledInstance(i, i, k, f, Verdict(bool(i % 2)), 1e-3, "builtin"))
    return out


def small_config(**extra):
    values = {"count": 40, "formula_length": 6, "algorithms": "dt,lr", "sweep_seeds": "1,2",
              "rf.n_trees": 5, "seed": 300}
    values.update(extra)
    return Config.load(None, values)


def non_timing_files(d):
    return {p.name: p.read_bytes() for p in sorted(Path(d).iterdir()) if not p.name.endswith(".timing")}


class TestDataset:
    def test_round_trip(self, tmp_path):
        insts = commands.generate_instances(small_config(count=5))
        k = insts[0].kripke
        insts.append(LabeledInstance(5, 5, k, insts[0].formula,
                                     Verdict(False, Lasso((k.initial[0],), tuple(k.transitions[k.initial[0]][:1]))),
                                     0.25, "builtin"))
        write_dataset(tmp_path / "d.txt", insts)
        again = read_dataset(tmp_path / "d.txt")
        assert [format(i.formula) for i in again] == [format(i.formula) for i in insts]
        assert again[-1] == insts[-1]
        assert dump_dataset(again) == dump_dataset(insts)

    def test_bad_magic(self):
        with pytest.raises(FormatError):
            parse_dataset("something else\n")


class TestGenerate:
    @pytest.mark.parametrize("count,length", [(405, 25), (400, 500)])
    def test_counts_and_lengths(self, tmp_path, count, length):
        cfg = Config.load(None, {"count": count, "formula_length": length})
        commands.cmd_generate(cfg, tmp_path / "a.txt")
        commands.cmd_generate(cfg, tmp_path / "b.txt")
        insts = read_dataset(tmp_path / "a.txt")
        assert len(insts) == count
        assert all(formula_length(i.formula) == length for i in insts)
        assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()

    def test_per_instance_seeds(self):
        insts = commands.generate_instances(small_config(count=3, seed=50))
        assert [i.seed for i in insts] == [50, 51, 52]


class TestLabel:
    def test_hand_fixtures(self, tmp_path):
        summary = commands.cmd_label(Config.load(), FIXTURES / "hand_instances.txt", tmp_path / "d.txt")
        labeled = read_dataset(tmp_path / "d.txt")
        assert [i.verdict.holds for i in labeled] == HAND_EXPECTED
        assert [check_reference(i.kripke, i.formula).holds for i in labeled] == HAND_EXPECTED
        assert "holds: 6/10" in summary.lines()
        assert all(i.label_seconds >= 0 and i.labeler == "builtin" for i in labeled)

    def test_failures_are_counted(self, tmp_path):
        cfg = Config.load(None, {"state_cap": 1})
        with pytest.raises(Exception, match="failed"):
            commands.cmd_label(cfg, FIXTURES / "hand_instances.txt", tmp_path / "d.txt")

    def test_workers_agree(self):
        insts = commands.generate_instances(small_config(count=12))
        serial, _ = commands.label_instances(insts, small_config(), workers=1)
        parallel, _ = commands.label_instances(insts, small_config(), workers=2)
        assert [i.verdict for i in serial] == [i.verdict for i in parallel]

    def test_missing_binary_fails_every_instance(self, tmp_path):
        cfg = Config.load(None, {"nusmv": str(tmp_path / "missing")})
        with pytest.raises(Exception, match="all 10 instances failed"):
            commands.cmd_label(cfg, FIXTURES / "hand_instances.txt", tmp_path / "d.txt", backend="external")


class TestTrainEval:
    @pytest.mark.parametrize("algorithm", ALGORITHMS)
    def test_separable(self, tmp_path, algorithm):
        write_dataset(tmp_path / "d.txt", separable_instances())
        cfg = small_config(**{"rf.n_trees": 10})
        rep = commands.cmd_train_eval(cfg, tmp_path / "d.txt", algorithm, tmp_path / "r.json")
        assert rep.accuracy == 1.0

    def test_deterministic(self, tmp_path):
        cfg = small_config(count=60)
        commands.cmd_generate(cfg, tmp_path / "i.txt")
        commands.cmd_label(cfg, tmp_path / "i.txt", tmp_path / "d.txt")
        for name in ("a", "b"):
            commands.cmd_train_eval(cfg, tmp_path / "d.txt", "rf", tmp_path / f"{name}.json",
                                    tmp_path / f"{name}.model")
        for ext in ("json", "model"):
            assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()

    def test_single_class(self):
        y = np.ones(20, dtype=np.int64)
        with pytest.raises(SingleClassError):
            commands.check_trainable(y)

    def test_too_few_records(self):
        with pytest.raises(Exception):
            commands.check_trainable(np.array([0, 1, 0]))


class TestBench:
    @pytest.mark.parametrize("t1,t2,percent,ratio", [
        (0.5, 0.001, "0.2%", 500),
        (1.0, 0.09, "9%", 11),
        (2.0, 0.9, "45%", 2),
    ])
    def test_ratios(self, t1, t2, percent, ratio):
        b = commands.BenchReport.from_means("dt", "25", t1, t2)
        assert b.percent() == percent
        assert b.ratio_t1_over_t2 == ratio
        assert b.ratio_t2_over_t1 == pytest.approx(t2 / t1)

    @pytest.mark.parametrize("x,expected", [(0.5, 1), (1.5, 2), (2.4999, 2), (483.5, 484)])
    def test_round_half_up(self, x, expected):
        assert commands.round_half_up(x) == expected

    def test_non_positive(self):
        with pytest.raises(MissingTimingError):
            commands.BenchReport.from_means("dt", "25", 0.0, 1.0)

    def test_missing_sidecar(self, tmp_path):
        write_dataset(tmp_path / "d.txt", separable_instances())
        commands.cmd_train_eval(small_config(), tmp_path / "d.txt", "dt", tmp_path / "r.json")
        b = commands.cmd_bench(tmp_path / "d.txt", tmp_path / "r.json")
        assert b.t1_mean_seconds == pytest.approx(1e-3)
        (tmp_path / "r.json.timing").unlink()
        with pytest.raises(MissingTimingError):
            commands.cmd_bench(tmp_path / "d.txt", tmp_path / "r.json")


class TestSweep:
    def test_single_cell_equals_train_eval(self):
        X, y = commands.dataset_arrays(separable_instances())
        best, grid = commands.sweep(X, y, "dt", [0.7], [4])
        single, _ = commands.train_eval(X, y, "dt", SplitSpec(0.7, 4))
        assert len(grid) == 1
        assert best.without_timing() == single.without_timing()

    def test_ties_pick_smallest_seed(self):
        X, y = commands.dataset_arrays(separable_instances())
        best, grid = commands.sweep(X, y, "dt", [0.8], [9, 3, 5])
        assert all(r.accuracy == 1.0 for r in grid)
        assert best.split.seed == 3

    def test_rerun_identical(self, tmp_path):
        write_dataset(tmp_path / "d.txt", separable_instances())
        cfg = small_config(fractions="0.7,0.88")
        for name in ("a", "b"):
            commands.cmd_sweep(cfg, tmp_path / "d.txt", "lr", tmp_path / f"{name}.json", tmp_path / f"{name}.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        assert len((tmp_path / "a.csv").read_text().splitlines()) == 1 + 4


class TestSummary:
    def test_row_order(self):
        rep = EvalReport("dt", 355, 50, 0.98, 0.97, SplitSpec(0.88, 3), 1e-5)
        b = commands.BenchReport.from_means("dt", "25", 0.01, 1e-5)
        rows = [line.split("  ")[0].strip() for line in commands.summary_table({"dt": rep}, {"dt": b}).splitlines()]
        assert rows == [
            "ML Algorithms", "Training record #", "Testing record #",
            "Running time per record (in second)", "Prediction Accuracy", "AUC", "Seed #",
            "Fraction", "t1 mean checking time (s)", "t2/t1", "t1/t2",
        ]


class TestE2E:
    def test_runs_and_reruns_identically(self, tmp_path):
        cfg = small_config()
        a = commands.run_e2e(cfg, tmp_path / "a")
        commands.run_e2e(cfg, tmp_path / "b")
        assert non_timing_files(tmp_path / "a") == non_timing_files(tmp_path / "b")
        assert set(a.best) == {"dt", "lr"}
        assert 0.5 <= a.prevalence <= 1.0
        assert (tmp_path / "a" / "summary.txt.timing").exists()

    def test_single_class_aborts(self, tmp_path):
        cfg = small_config(formula_length=1, operator_weights="true:1", rebalance_attempts=1)
        with pytest.raises(SingleClassError):
            commands.run_e2e(cfg, tmp_path)


class TestCli:
    def test_show_config(self, capsys):
        assert run(["generate", "-o", "unused", "--show-config", "--count", "7"]) == 0
        out = capsys.readouterr().out
        assert "count = 7\n" in out
        assert len(out.splitlines()) == len(DEFAULTS)

    def test_config_file(self, tmp_path, capsys):
        (tmp_path / "c.conf").write_text("# comment\ncount = 9\nbackend = builtin\n")
        assert run(["generate", "-o", "x", "--config", str(tmp_path / "c.conf"), "--show-config"]) == 0
        assert "count = 9" in capsys.readouterr().out

    def test_bad_config(self, tmp_path):
        (tmp_path / "c.conf").write_text("nonsense = 1\n")
        assert run(["generate", "-o", "x", "--config", str(tmp_path / "c.conf")]) == 3

    def test_invalid_spec(self, tmp_path):
        assert run(["generate", "-o", str(tmp_path / "x"), "--state-min", "0"]) == 2

    def test_missing_input(self, tmp_path):
        assert run(["label", str(tmp_path / "none.txt"), "-o", str(tmp_path / "d.txt")]) == 9

    def test_single_class_exit(self, tmp_path):
        insts = [LabeledInstance(i, i, s.kripke, s.formula, Verdict(True), 0.1, "builtin")
                 for i, s in enumerate(separable_instances(12))]
        write_dataset(tmp_path / "d.txt", insts)
        assert run(["train-eval", str(tmp_path / "d.txt"), "-a", "dt", "-o", str(tmp_path / "r.json")]) == 8

    def test_full_chain_byte_identical(self, tmp_path, capsys):
        def chain(d):
            d.mkdir()
            common = ["--count", "30", "--formula-length", "7", "--seed", "11", "--rf.n-trees", "5"]
            assert run(["generate", "-o", str(d / "i.txt"), *common]) == 0
            assert run(["label", str(d / "i.txt"), "-o", str(d / "d.txt"), *common]) == 0
            assert run(["features", str(d / "d.txt"), "-o", str(d / "f.csv")]) == 0
            assert run(["train-eval", str(d / "d.txt"), "-a", "rf", "-o", str(d / "r.json"),
                        "--model", str(d / "m.txt"), *common]) == 0
            assert run(["bench", str(d / "d.txt"), str(d / "r.json"), "-o", str(d / "b.json.timing")]) == 0
            assert run(["sweep", str(d / "d.txt"), "-a", "knn", "-o", str(d / "s.json"),
                        "--grid", str(d / "g.csv"), "--sweep-seeds", "1,2", *common]) == 0
            return non_timing_files(d)

        assert chain(tmp_path / "a") == chain(tmp_path / "b")
        out = capsys.readouterr().out
        assert "labeled: 30" in out
        report = json.loads((tmp_path / "a" / "r.json").read_text())
        assert "per_record_predict_seconds" not in report
