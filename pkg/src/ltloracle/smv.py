"""NuSMV bridge: emit ``.smv`` models, run the binary, read the verdict."""

from __future__ import annotations

import os
import re
import shutil
import subprocess
import tempfile
import time
from pathlib import Path

from .checker.lasso import Verdict
from .errors import ExternalTimeoutError, ExternalToolError, UnrecognizedOutputError
from .logic.formula import FalseConst, Formula, Not, Release, TrueConst, format_ltl
from .logic.kripke import KripkeStructure

NUSMV_ENV = "LTLORACLE_NUSMV"

NUSMV_SYMBOLS = {Not: "!", Release: "V", TrueConst: "TRUE", FalseConst: "FALSE"}

# lowercase NuSMV keywords and builtins an atom name could clash with
_RESERVED = frozenset("""
    abs array bool boolean case count esac extend floor in init integer max min mod
    next of process real resize running self signed sizeof state swconst toint union
    unsigned uwconst word word1 xnor xor
""".split())

_VERDICT_LINE = re.compile(r"^-- specification .* is (true|false)\s*$", re.MULTILINE)


def smv_names(alphabet) -> dict[str, str]:
    """Atom -> identifier used in the model; clashing names get an ``ap_`` prefix."""
    taken = set(alphabet)
    out = {}
    for a in alphabet:
        name = a
        if a in _RESERVED or re.fullmatch(r"s\d+", a):
            name = "ap_" + a
            while name in taken:
                name = "ap_" + name
            taken.add(name)
        out[a] = name
    return out


def _state_set(states) -> str:
    names = [f"s{s}" for s in states]
    return names[0] if len(names) == 1 else "{" + ", ".join(names) + "}"


def emit_smv(k: KripkeStructure, f: Formula) -> str:
    names = smv_names(k.alphabet)
    lines = [
        "MODULE main",
        "VAR",
        "  state : {" + ", ".join(f"s{s}" for s in range(k.n_states)) + "};",
        "ASSIGN",
        f"  init(state) := {_state_set(k.initial)};",
        "  next(state) :=",
        "    case",
    ]
    for s in range(k.n_states):
        lines.append(f"      state = s{s} : {_state_set(k.transitions[s])};")
    lines += ["    esac;", "DEFINE"]
    for a in k.alphabet:
        holders = [s for s in range(k.n_states) if a in k.labels[s]]
        expr = " | ".join(f"state = s{s}" for s in holders) if holders else "FALSE"
        lines.append(f"  {names[a]} := {expr};")
    spec = format_ltl(_rename(f, names), NUSMV_SYMBOLS)
    lines += ["LTLSPEC", f"  {spec}"]
    return "\n".join(lines) + "\n"


def _rename(f: Formula, names: dict[str, str]) -> Formula:
    if all(k == v for k, v in names.items()):
        return f
    from .logic.parser import parse_ltl  # local: only needed for clashing names

    text = format_ltl(f)
    text = re.sub(r"[a-z][a-z0-9_]*", lambda m: names.get(m.group(0), m.group(0)), text)
    return parse_ltl(text)


def parse_nusmv_output(text: str) -> Verdict:
    m = _VERDICT_LINE.search(text)
    if m is None:
        raise UnrecognizedOutputError("no '-- specification ... is true/false' line in NuSMV output")
    return Verdict(m.group(1) == "true")


def resolve_binary(binary: str | None = None) -> str | None:
    return binary or os.environ.get(NUSMV_ENV) or shutil.which("NuSMV")


def external_check(
    k: KripkeStructure,
    f: Formula,
    binary: str | None = None,
    timeout: float = 600.0,
    keep_temps: bool = False,
) -> tuple[Verdict, float]:
    """Model-check with NuSMV and return ``(verdict, wall seconds)``.

    Only the outcome is read back; counterexample traces are not parsed.
    """
    binary = resolve_binary(binary)
    if binary is None or not Path(binary).exists():
        raise ExternalToolError(f"NuSMV binary not found ({binary!r}); set {NUSMV_ENV}")
    workdir = tempfile.mkdtemp(prefix="ltloracle-")
    model = Path(workdir) / "model.smv"
    model.write_text(emit_smv(k, f))
    try:
        start = time.perf_counter()
        try:
            proc = subprocess.run(
                [binary, str(model)], capture_output=True, text=True, timeout=timeout
            )
        except subprocess.TimeoutExpired as exc:
            raise ExternalTimeoutError(f"NuSMV timed out after {timeout} s") from exc
        except OSError as exc:
            raise ExternalToolError(f"could not start {binary}: {exc}") from exc
        elapsed = time.perf_counter() - start
        return parse_nusmv_output(proc.stdout), elapsed
    finally:
        if not keep_temps:
            shutil.rmtree(workdir, ignore_errors=True)
