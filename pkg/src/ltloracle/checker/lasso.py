"""Verdicts, lasso witnesses and exact evaluation on ultimately periodic words."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import MalformedLassoError
from ..logic.formula import (
    And,
    Atom,
    FalseConst,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    TrueConst,
    Until,
    iter_nodes,
)
from ..logic.kripke import KripkeStructure


@dataclass(frozen=True)
class Lasso:
    stem: tuple[int, ...]
    loop: tuple[int, ...]

    def states(self) -> tuple[int, ...]:
        return self.stem + self.loop


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Lasso | None = None

    @property
    def outcome(self) -> str:
        return "holds" if self.holds else "violated"


def eval_lasso(stem: Sequence[frozenset[str]], loop: Sequence[frozenset[str]], f: Formula) -> bool:
    """Truth of ``f`` at position 0 of the word ``stem . loop^omega``.

    Positions ``0 .. len(stem)+len(loop)-1`` are evaluated bottom-up; the last
    position steps back to the start of the loop. Until and Finally are least
    fixpoints, Release and Globally greatest ones, both reached by iteration.
    """
    if not loop:
        raise ValueError("the loop of a lasso word must be nonempty")
    letters = [frozenset(x) for x in stem] + [frozenset(x) for x in loop]
    n = len(letters)
    succ = list(range(1, n)) + [len(stem)]
    order = list(range(n - 1, -1, -1))
    val: dict[int, list[bool]] = {}

    def fixpoint(init: bool, step) -> list[bool]:
        cur = [init] * n
        changed = True
        while changed:
            changed = False
            for i in order:
                v = step(i, cur)
                if v != cur[i]:
                    cur[i] = v
                    changed = True
        return cur

    for node in reversed(list(iter_nodes(f))):
        key = id(node)
        if key in val:
            continue
        match node:
            case Atom(name=name):
                out = [name in letter for letter in letters]
            case TrueConst():
                out = [True] * n
            case FalseConst():
                out = [False] * n
            case Not(operand=a):
                out = [not x for x in val[id(a)]]
            case And(left=a, right=b):
                out = [x and y for x, y in zip(val[id(a)], val[id(b)])]
            case Or(left=a, right=b):
                out = [x or y for x, y in zip(val[id(a)], val[id(b)])]
            case Implies(left=a, right=b):
                out = [(not x) or y for x, y in zip(val[id(a)], val[id(b)])]
            case Next(operand=a):
                va = val[id(a)]
                out = [va[succ[i]] for i in range(n)]
            case Finally(operand=a):
                va = val[id(a)]
                out = fixpoint(False, lambda i, cur, va=va: va[i] or cur[succ[i]])
            case Globally(operand=a):
                va = val[id(a)]
                out = fixpoint(True, lambda i, cur, va=va: va[i] and cur[succ[i]])
            case Until(left=a, right=b):
                va, vb = val[id(a)], val[id(b)]
                out = fixpoint(False, lambda i, cur, va=va, vb=vb: vb[i] or (va[i] and cur[succ[i]]))
            case Release(left=a, right=b):
                va, vb = val[id(a)], val[id(b)]
                out = fixpoint(True, lambda i, cur, va=va, vb=vb: vb[i] and (va[i] or cur[succ[i]]))
            case _:
                raise TypeError(f"not a formula node: {node!r}")
        val[key] = out
    return val[id(f)][0]


def lasso_word(k: KripkeStructure, lasso: Lasso):
    return [k.labels[s] for s in lasso.stem], [k.labels[s] for s in lasso.loop]


def check_lasso_shape(k: KripkeStructure, lasso: Lasso) -> None:
    if not lasso.loop:
        raise MalformedLassoError("empty loop")
    seq = lasso.states()
    for s in seq:
        if not 0 <= s < k.n_states:
            raise MalformedLassoError(f"state {s} is not a state of the structure")
    if seq[0] not in k.initial:
        raise MalformedLassoError(f"lasso starts in non-initial state {seq[0]}")
    for a, b in zip(seq, seq[1:]):
        if not k.has_edge(a, b):
            raise MalformedLassoError(f"{a}->{b} is not an edge")
    if not k.has_edge(lasso.loop[-1], lasso.loop[0]):
        raise MalformedLassoError(f"loop does not close: {lasso.loop[-1]}->{lasso.loop[0]} is not an edge")


def verify_counterexample(k: KripkeStructure, f: Formula, lasso: Lasso | None) -> bool:
    """True iff ``lasso`` is a run of ``k`` whose word falsifies ``f``.

    ``None`` (the witness of a Holds verdict) passes vacuously.
    """
    if lasso is None:
        return True
    check_lasso_shape(k, lasso)
    stem, loop = lasso_word(k, lasso)
    return not eval_lasso(stem, loop, f)
