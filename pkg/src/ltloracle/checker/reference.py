"""Reference checker built from a declarative closure tableau.

Works on the NNF of ``!f`` with ``F a`` rewritten to ``true U a`` and
``G a`` to ``false R a``. A tableau atom is a truth assignment to every
closure formula that is locally consistent with one Kripke label: boolean
connectives are computed, ``X`` formulas are free, and ``a U b`` / ``a R b``
are forced whenever their current-step expansion decides them. Successor
atoms must honour the ``X``, ``U`` and ``R`` expansion laws. A path is fair
when every ``U`` formula is infinitely often either false or fulfilled.

The product with ``K`` is built explicitly and searched for a reachable,
nontrivial, fair strongly connected component.
"""

from __future__ import annotations

from collections import deque

from ..errors import ResourceLimitError
from ..logic.formula import (
    FALSE,
    TRUE,
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
    to_nnf,
)
from ..logic.kripke import KripkeStructure
from .buchi import DEFAULT_STATE_CAP
from .lasso import Lasso, Verdict


def _core(f: Formula) -> Formula:
    match f:
        case Finally(operand=a):
            return Until(TRUE, _core(a))
        case Globally(operand=a):
            return Release(FALSE, _core(a))
        case Next(operand=a):
            return Next(_core(a))
        case And(left=a, right=b):
            return And(_core(a), _core(b))
        case Or(left=a, right=b):
            return Or(_core(a), _core(b))
        case Until(left=a, right=b):
            return Until(_core(a), _core(b))
        case Release(left=a, right=b):
            return Release(_core(a), _core(b))
    return f


class Closure:
    """Closure formulas in postorder: children always precede parents."""

    def __init__(self, root: Formula):
        self.formulas: list[Formula] = []
        self.index: dict[Formula, int] = {}
        self._add(root)
        self.root = self.index[root]
        self.untils = [i for i, f in enumerate(self.formulas) if isinstance(f, Until)]
        self._atom_cache: dict[frozenset[str], list[tuple[bool, ...]]] = {}

    def _add(self, f: Formula) -> None:
        stack = [(f, False)]
        while stack:
            node, expanded = stack.pop()
            if node in self.index:
                continue
            if expanded:
                self.index[node] = len(self.formulas)
                self.formulas.append(node)
                continue
            stack.append((node, True))
            for c in reversed(_kids(node)):
                stack.append((c, False))

    def atoms(self, label: frozenset[str]) -> list[tuple[bool, ...]]:
        """All consistent assignments for one letter, in a fixed order."""
        cached = self._atom_cache.get(label)
        if cached is not None:
            return cached
        partial: list[list[bool]] = [[]]
        for f in self.formulas:
            nxt = []
            for a in partial:
                for v in self._options(f, a, label):
                    nxt.append(a + [v])
            partial = nxt
        result = [tuple(a) for a in partial]
        self._atom_cache[label] = result
        return result

    def _options(self, f: Formula, a: list[bool], label) -> tuple[bool, ...]:
        idx = self.index
        match f:
            case TrueConst():
                return (True,)
            case FalseConst():
                return (False,)
            case Atom(name=name):
                return (name in label,)
            case Not(operand=Atom(name=name)):
                return (name not in label,)
            case And(left=l, right=r):
                return (a[idx[l]] and a[idx[r]],)
            case Or(left=l, right=r):
                return (a[idx[l]] or a[idx[r]],)
            case Next():
                return (False, True)
            case Until(left=l, right=r):
                if a[idx[r]]:
                    return (True,)
                if not a[idx[l]]:
                    return (False,)
                return (False, True)
            case Release(left=l, right=r):
                if not a[idx[r]]:
                    return (False,)
                if a[idx[l]]:
                    return (True,)
                return (False, True)
        raise TypeError(f"unexpected closure formula {f!r}")

    def step_ok(self, a: tuple[bool, ...], b: tuple[bool, ...]) -> bool:
        idx = self.index
        for i, f in enumerate(self.formulas):
            if isinstance(f, Next):
                if a[i] != b[idx[f.operand]]:
                    return False
            elif isinstance(f, Until):
                want = a[idx[f.right]] or (a[idx[f.left]] and b[i])
                if a[i] != want:
                    return False
            elif isinstance(f, Release):
                want = a[idx[f.right]] and (a[idx[f.left]] or b[i])
                if a[i] != want:
                    return False
        return True

    def fulfils(self, a: tuple[bool, ...], u: int) -> bool:
        return not a[u] or a[self.index[self.formulas[u].right]]


def _kids(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Not, Next)):
        return (f.operand,)
    if isinstance(f, (And, Or, Until, Release)):
        return (f.left, f.right)
    return ()


def _tarjan(n: int, succ: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for j in range(pos, len(succ[v])):
                w = succ[v][j]
                if index[w] == -1:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _bfs_path(starts: list[int], goal, succ: list[list[int]], allowed=None) -> list[int] | None:
    """Shortest path from any of ``starts`` to a node satisfying ``goal``."""
    parent: dict[int, int | None] = {}
    queue = deque()
    for s in starts:
        if s not in parent and (allowed is None or s in allowed):
            parent[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        if goal(v):
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in succ[v]:
            if w not in parent and (allowed is None or w in allowed):
                parent[w] = v
                queue.append(w)
    return None


def check_reference(k: KripkeStructure, f: Formula, state_cap: int = DEFAULT_STATE_CAP) -> Verdict:
    closure = Closure(_core(to_nnf(Not(f))))

    # explicit product, states numbered in BFS discovery order
    states: list[tuple[int, tuple[bool, ...]]] = []
    number: dict[tuple[int, tuple[bool, ...]], int] = {}
    succ: list[list[int]] = []
    initial: list[int] = []

    def intern(node) -> int:
        i = number.get(node)
        if i is None:
            i = len(states)
            if i >= state_cap:
                raise ResourceLimitError(f"reference product exceeded {state_cap} states")
            number[node] = i
            states.append(node)
            succ.append([])
        return i

    for s in k.initial:
        for a in closure.atoms(k.labels[s]):
            if a[closure.root]:
                initial.append(intern((s, a)))
    frontier = deque(initial)
    expanded = set()
    while frontier:
        v = frontier.popleft()
        if v in expanded:
            continue
        expanded.add(v)
        s, a = states[v]
        for t in k.transitions[s]:
            for b in closure.atoms(k.labels[t]):
                if closure.step_ok(a, b):
                    w = intern((t, b))
                    succ[v].append(w)
                    if w not in expanded:
                        frontier.append(w)

    n = len(states)
    fair_state = [False] * n
    for comp in _tarjan(n, succ):
        members = set(comp)
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        if all(any(closure.fulfils(states[v][1], u) for v in comp) for u in closure.untils):
            for v in comp:
                fair_state[v] = members
    if not any(fair_state):
        return Verdict(True)

    stem = _bfs_path(initial, lambda v: fair_state[v] is not False, succ)
    entry = stem[-1]
    scc = fair_state[entry]
    loop = [entry]
    for u in closure.untils:
        if closure.fulfils(states[loop[-1]][1], u):
            continue
        hop = _bfs_path([loop[-1]], lambda v, u=u: closure.fulfils(states[v][1], u), succ, scc)
        loop.extend(hop[1:])
    back = _bfs_path(list(succ[loop[-1]]), lambda v: v == entry, succ, scc)
    loop.extend(back[:-1])
    return Verdict(False, Lasso(
        tuple(states[v][0] for v in stem[:-1]),
        tuple(states[v][0] for v in loop),
    ))
