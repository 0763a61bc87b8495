"""LTL to generalized Buchi automata by on-the-fly tableau expansion.

The construction follows Gerth, Peled, Vardi and Wolper (1995): a node keeps
``new`` obligations still to process, ``old`` ones already processed and
``next`` ones for the successor position. Subformulas are numbered once, so
every set below holds integers and iteration order never depends on hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import ResourceLimitError
from ..logic.formula import (
    And,
    Atom,
    FalseConst,
    Finally,
    Formula,
    Globally,
    Next,
    Not,
    Or,
    Release,
    TrueConst,
    Until,
    children,
    is_nnf,
)

DEFAULT_STATE_CAP = 2_000_000

Guard = tuple[frozenset[str], frozenset[str]]  # (must hold, must not hold)


@dataclass(frozen=True)
class BuchiAutomaton:
    """Transition-labelled generalized Buchi automaton.

    A transition ``(guard, target)`` reads the letter of the position it
    enters. State 0 is the dedicated initial state and belongs to no
    acceptance set.
    """

    n_states: int
    initial: tuple[int, ...]
    transitions: tuple[tuple[tuple[Guard, int], ...], ...]
    acceptance: tuple[frozenset[int], ...]

    def enabled(self, q: int, letter: frozenset[str]):
        for (pos, neg), target in self.transitions[q]:
            if pos <= letter and not (neg & letter):
                yield target


class _Table:
    """Subformulas of one NNF formula, numbered in first-visit order."""

    def __init__(self, root: Formula):
        self.nodes: list[Formula] = []
        self.index: dict[Formula, int] = {}
        self.kids: list[tuple[int, ...]] = []
        stack = [root]
        while stack:
            f = stack.pop()
            if f in self.index:
                continue
            self.index[f] = len(self.nodes)
            self.nodes.append(f)
            stack.extend(reversed(children(f)))
        self.kids = [tuple(self.index[c] for c in children(f)) for f in self.nodes]
        self.root = 0


@dataclass
class _Node:
    incoming: set[int]
    new: set[int]
    old: set[int]
    nxt: set[int]


def ltl_to_buchi(f_nnf: Formula, state_cap: int = DEFAULT_STATE_CAP) -> BuchiAutomaton:
    if not is_nnf(f_nnf):
        raise ValueError("ltl_to_buchi expects a formula in negation normal form")
    return _translate(f_nnf, state_cap)


# for suites that check one formula against thousands of structures
cached_ltl_to_buchi = lru_cache(maxsize=4096)(ltl_to_buchi)


def _translate(f_nnf: Formula, state_cap: int) -> BuchiAutomaton:
    table = _Table(f_nnf)
    nodes = table.nodes
    kids = table.kids

    # complementary literal of each literal index, when it occurs at all
    literal_of: dict[int, tuple[str, bool]] = {}
    for i, f in enumerate(nodes):
        if isinstance(f, Atom):
            literal_of[i] = (f.name, True)
        elif isinstance(f, Not):
            literal_of[i] = (f.operand.name, False)
    by_literal = {lit: i for i, lit in literal_of.items()}
    complement = {
        i: by_literal.get((name, not pol)) for i, (name, pol) in literal_of.items()
    }

    finished: dict[tuple[frozenset[int], frozenset[int]], int] = {}
    finished_old: list[frozenset[int]] = []
    incoming: list[set[int]] = []
    stack = [_Node({0}, {table.root}, set(), set())]

    while stack:
        node = stack.pop()
        if not node.new:
            key = (frozenset(node.old), frozenset(node.nxt))
            found = finished.get(key)
            if found is not None:
                incoming[found - 1] |= node.incoming
                continue
            ident = len(finished) + 1
            if ident >= state_cap:
                raise ResourceLimitError(f"Buchi translation exceeded {state_cap} states")
            finished[key] = ident
            finished_old.append(key[0])
            incoming.append(set(node.incoming))
            stack.append(_Node({ident}, set(node.nxt), set(), set()))
            continue

        eta = max(node.new)
        node.new.discard(eta)
        if eta in node.old:
            stack.append(node)
            continue
        f = nodes[eta]
        if isinstance(f, FalseConst):
            continue
        if isinstance(f, TrueConst):
            # recorded so acceptance sees "a U true" as fulfilled
            node.old.add(eta)
            stack.append(node)
            continue
        if eta in literal_of:
            if complement[eta] is not None and complement[eta] in node.old:
                continue
            node.old.add(eta)
            stack.append(node)
            continue

        old = node.old | {eta}
        if isinstance(f, And):
            stack.append(_Node(node.incoming, node.new | (set(kids[eta]) - old), old, node.nxt))
        elif isinstance(f, Next):
            stack.append(_Node(node.incoming, node.new, old, node.nxt | {kids[eta][0]}))
        elif isinstance(f, Globally):
            (a,) = kids[eta]
            stack.append(_Node(node.incoming, node.new | ({a} - old), old, node.nxt | {eta}))
        else:
            if isinstance(f, Or):
                a, b = kids[eta]
                first = (node.new | ({a} - old), node.nxt)
                second = (node.new | ({b} - old), node.nxt)
            elif isinstance(f, Until):
                a, b = kids[eta]
                first = (node.new | ({a} - old), node.nxt | {eta})
                second = (node.new | ({b} - old), node.nxt)
            elif isinstance(f, Release):
                a, b = kids[eta]
                first = (node.new | ({b} - old), node.nxt | {eta})
                second = (node.new | ({a, b} - old), node.nxt)
            elif isinstance(f, Finally):
                (a,) = kids[eta]
                first = (set(node.new), node.nxt | {eta})
                second = (node.new | ({a} - old), node.nxt)
            else:
                raise TypeError(f"unexpected node {f!r}")
            # second pushed last so it is expanded first
            stack.append(_Node(set(node.incoming), first[0], set(old), set(first[1])))
            stack.append(_Node(set(node.incoming), second[0], set(old), set(second[1])))

    n_states = len(finished) + 1
    outgoing: list[list[tuple[Guard, int]]] = [[] for _ in range(n_states)]
    for ident, (old, src) in enumerate(zip(finished_old, incoming), start=1):
        pos = frozenset(literal_of[i][0] for i in old if i in literal_of and literal_of[i][1])
        neg = frozenset(literal_of[i][0] for i in old if i in literal_of and not literal_of[i][1])
        for s in src:
            outgoing[s].append(((pos, neg), ident))
    for lst in outgoing:
        lst.sort(key=lambda t: t[1])

    acceptance = []
    for i, f in enumerate(nodes):
        if isinstance(f, (Until, Finally)):
            goal = kids[i][-1]
            acceptance.append(frozenset(
                ident for ident, old in enumerate(finished_old, start=1)
                if i not in old or goal in old
            ))
    return BuchiAutomaton(
        n_states=n_states,
        initial=(0,),
        transitions=tuple(tuple(lst) for lst in outgoing),
        acceptance=tuple(acceptance),
    )
