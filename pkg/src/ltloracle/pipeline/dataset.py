"""Instance and dataset files.

One file format serves both: generated instances simply lack the verdict
lines. Example block::

    instance 0
    seed 17
    states 2
    init 0
    ap p0 p1
    s 0 labels p0 succ 0 1
    s 1 labels succ 0
    formula (G p0)
    verdict false
    lasso stem loop 0
    labeler builtin
    end

Wall-clock labeling times vary from run to run, so they live in a sidecar
``<file>.timing`` (``index,label_seconds`` rows) and the main file stays
byte-identical across reruns.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from ..checker.lasso import Lasso, Verdict
from ..errors import FormatError
from ..logic.formula import Formula, format_ltl
from ..logic.kripke import KripkeStructure, dump_kripke, parse_kripke
from ..logic.parser import parse_ltl

MAGIC = "ltloracle-dataset 1"


@dataclass(frozen=True)
class LabeledInstance:
    index: int
    seed: int
    kripke: KripkeStructure
    formula: Formula
    verdict: Verdict | None = None
    label_seconds: float | None = None
    labeler: str | None = None  # "builtin" or "external"

    @property
    def label(self) -> int:
        """1 when the formula holds, 0 when it is violated."""
        if self.verdict is None:
            raise ValueError(f"instance {self.index} is not labeled")
        return int(self.verdict.holds)


def timing_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".timing")


def dump_dataset(instances: Sequence[LabeledInstance]) -> str:
    out = [MAGIC, f"records {len(instances)}", ""]
    for inst in instances:
        out.append(f"instance {inst.index}")
        out.append(f"seed {inst.seed}")
        out.append(dump_kripke(inst.kripke).rstrip("\n"))
        out.append(f"formula {format_ltl(inst.formula)}")
        if inst.verdict is not None:
            out.append("verdict " + ("true" if inst.verdict.holds else "false"))
            cex = inst.verdict.counterexample
            if cex is not None:
                out.append(" ".join(["lasso stem", *map(str, cex.stem), "loop", *map(str, cex.loop)]))
            out.append(f"labeler {inst.labeler}")
        out.append("end")
        out.append("")
    return "\n".join(out)


def parse_dataset(text: str, timings: dict[int, float] | None = None) -> list[LabeledInstance]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise FormatError(f"not a dataset file (expected {MAGIC!r})")
    instances = []
    block: list[str] = []
    for raw in lines[1:]:
        line = raw.strip()
        if line.startswith("records") or (not line and not block):
            continue
        if line == "end":
            instances.append(_parse_block(block, timings or {}))
            block = []
        elif line:
            block.append(line)
    if block:
        raise FormatError("unterminated instance block")
    return instances


def _parse_block(block: list[str], timings: dict[int, float]) -> LabeledInstance:
    fields: dict[str, str] = {}
    kripke_lines = []
    for line in block:
        key, _, rest = line.partition(" ")
        if key in ("states", "init", "ap", "s"):
            kripke_lines.append(line)
        else:
            fields[key] = rest
    try:
        index = int(fields["instance"])
        kripke = parse_kripke("\n".join(kripke_lines))
        formula = parse_ltl(fields["formula"], kripke.alphabet)
        verdict = None
        if "verdict" in fields:
            cex = None
            if "lasso" in fields:
                parts = fields["lasso"].split()
                cut = parts.index("loop")
                cex = Lasso(tuple(map(int, parts[1:cut])), tuple(map(int, parts[cut + 1:])))
            verdict = Verdict(fields["verdict"] == "true", cex)
        return LabeledInstance(
            index=index,
            seed=int(fields["seed"]),
            kripke=kripke,
            formula=formula,
            verdict=verdict,
            label_seconds=timings.get(index) if verdict is not None else None,
            labeler=fields.get("labeler"),
        )
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad instance block starting {block[:1]}: {exc}") from exc


def write_dataset(path, instances: Sequence[LabeledInstance]) -> None:
    Path(path).write_text(dump_dataset(instances))
    timed = [(i.index, i.label_seconds) for i in instances if i.label_seconds is not None]
    if timed:
        rows = ["index,label_seconds"] + [f"{idx},{sec!r}" for idx, sec in timed]
        timing_path(path).write_text("\n".join(rows) + "\n")


def read_dataset(path) -> list[LabeledInstance]:
    timings = {}
    tp = timing_path(path)
    if tp.exists():
        for line in tp.read_text().splitlines()[1:]:
            if line.strip():
                idx, sec = line.split(",")
                timings[int(idx)] = float(sec)
    return parse_dataset(Path(path).read_text(), timings)
