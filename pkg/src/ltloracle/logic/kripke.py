"""Kripke structures and their line-oriented text format.

Text format::

    states 2
    init 0
    ap p q
    s 0 labels p succ 0 1
    s 1 labels succ 0

Label and successor lists are space separated and may be empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import FormatError


@dataclass(frozen=True)
class KripkeStructure:
    n_states: int
    initial: tuple[int, ...]
    transitions: tuple[tuple[int, ...], ...]
    labels: tuple[frozenset[str], ...]
    alphabet: tuple[str, ...]

    @classmethod
    def build(cls, transitions, labels, initial=(0,), alphabet=None) -> "KripkeStructure":
        """Convenience constructor normalising lists and sets into tuples."""
        labels = tuple(frozenset(lab) for lab in labels)
        if alphabet is None:
            alphabet = sorted(set().union(*labels)) if labels else []
        return cls(
            n_states=len(transitions),
            initial=tuple(sorted(set(initial))),
            transitions=tuple(tuple(sorted(set(succ))) for succ in transitions),
            labels=labels,
            alphabet=tuple(alphabet),
        )

    @classmethod
    def word_structure(cls, stem, loop) -> "KripkeStructure":
        """The single-path structure whose only run spells ``stem . loop^omega``."""
        letters = [frozenset(x) for x in stem] + [frozenset(x) for x in loop]
        n = len(letters)
        transitions = tuple((i + 1,) for i in range(n - 1)) + ((len(stem),),)
        alphabet = sorted(set().union(*letters))
        return cls(n, (0,), transitions, tuple(letters), tuple(alphabet))

    def successors(self, s: int) -> tuple[int, ...]:
        return self.transitions[s]

    def edge_count(self) -> int:
        return sum(len(succ) for succ in self.transitions)

    def has_edge(self, a: int, b: int) -> bool:
        return 0 <= a < self.n_states and b in self.transitions[a]


def validate_kripke(k: KripkeStructure) -> list[str]:
    """Every invariant breach as a message; an empty list means valid."""
    problems = []
    if k.n_states < 1:
        problems.append("no states")
    if len(k.transitions) != k.n_states:
        problems.append(f"transition table has {len(k.transitions)} rows for {k.n_states} states")
    if len(k.labels) != k.n_states:
        problems.append(f"label table has {len(k.labels)} rows for {k.n_states} states")
    if not k.initial:
        problems.append("empty initial set")
    for s in k.initial:
        if not 0 <= s < k.n_states:
            problems.append(f"initial state {s} out of range")
    names = list(k.alphabet)
    if len(set(names)) != len(names):
        problems.append("duplicate alphabet names")
    if any(not name for name in names):
        problems.append("empty alphabet name")
    alphabet = set(names)
    for s, succ in enumerate(k.transitions):
        if not succ:
            problems.append(f"non-total at state {s}")
        for t in succ:
            if not 0 <= t < k.n_states:
                problems.append(f"edge {s}->{t} leaves the state space at state {s}")
    for s, lab in enumerate(k.labels):
        unknown = sorted(lab - alphabet)
        if unknown:
            problems.append(f"unknown labels {unknown} at state {s}")
    return problems


def dump_kripke(k: KripkeStructure) -> str:
    lines = [
        f"states {k.n_states}",
        "init " + " ".join(map(str, k.initial)),
        "ap " + " ".join(k.alphabet),
    ]
    for s in range(k.n_states):
        labs = [a for a in k.alphabet if a in k.labels[s]]
        lines.append(
            " ".join(["s", str(s), "labels", *labs, "succ", *map(str, k.transitions[s])])
        )
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_kripke(text: str) -> KripkeStructure:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        head = {ln[0]: ln[1:] for ln in lines if ln[0] in ("states", "init", "ap")}
        n = int(head["states"][0])
        initial = tuple(int(x) for x in head["init"])
        alphabet = tuple(head["ap"])
    except (KeyError, IndexError, ValueError) as exc:
        raise FormatError(f"bad Kripke header: {exc}") from exc
    transitions: list = [None] * n
    labels: list = [None] * n
    for ln in lines:
        if ln[0] != "s":
            continue
        try:
            s = int(ln[1])
            if ln[2] != "labels" or "succ" not in ln:
                raise ValueError("expected 'labels ... succ ...'")
            cut = ln.index("succ")
            labels[s] = frozenset(ln[3:cut])
            transitions[s] = tuple(int(x) for x in ln[cut + 1:])
        except (IndexError, ValueError) as exc:
            raise FormatError(f"bad state line {' '.join(ln)!r}: {exc}") from exc
    if any(t is None for t in transitions):
        raise FormatError("missing state lines")
    return KripkeStructure(n, initial, tuple(transitions), tuple(labels), alphabet)
