"""Automata-theoretic model checking by nested depth-first search.

``K |= f`` iff the product of ``K`` with the automaton of ``!f`` has no
accepting cycle. Generalized acceptance is degeneralized with a counter
``c``: from a product state whose automaton component lies in acceptance set
``c`` the counter advances to ``c + 1 mod m``; the states with ``c == 0``
inside set 0 are the Buchi-accepting ones.
"""

from __future__ import annotations

from ..errors import ResourceLimitError
from ..logic.formula import Formula, Not, to_nnf
from ..logic.kripke import KripkeStructure
from .buchi import DEFAULT_STATE_CAP, BuchiAutomaton, cached_ltl_to_buchi, ltl_to_buchi
from .lasso import Lasso, Verdict

ProductState = tuple[int, int, int]  # (kripke state, automaton state, counter)


class Product:
    """Lazily explored ``K x A`` with the degeneralization counter folded in."""

    def __init__(self, k: KripkeStructure, aut: BuchiAutomaton, state_cap: int = DEFAULT_STATE_CAP):
        self.k = k
        self.aut = aut
        self.state_cap = state_cap
        if aut.acceptance:
            self.sets = aut.acceptance
        else:
            self.sets = (frozenset(range(aut.n_states)),)
        self.m = len(self.sets)
        self._moves: dict[tuple[int, int], tuple[int, ...]] = {}

    def _enabled(self, q: int, s: int) -> tuple[int, ...]:
        key = (q, s)
        moves = self._moves.get(key)
        if moves is None:
            moves = tuple(self.aut.enabled(q, self.k.labels[s]))
            self._moves[key] = moves
        return moves

    def initial_states(self) -> list[ProductState]:
        out = []
        for s in self.k.initial:
            for q0 in self.aut.initial:
                for q in self._enabled(q0, s):
                    out.append((s, q, 0))
        return out

    def successors(self, state: ProductState) -> list[ProductState]:
        s, q, c = state
        c2 = (c + 1) % self.m if q in self.sets[c] else c
        return [(t, q2, c2) for t in self.k.transitions[s] for q2 in self._enabled(q, t)]

    def accepting(self, state: ProductState) -> bool:
        return state[2] == 0 and state[1] in self.sets[0]


def find_accepting_lasso(product: Product) -> tuple[list[ProductState], list[ProductState]] | None:
    """Nested DFS (Courcoubetis et al.) with the stack check of Holzmann et al.

    Returns product-level ``(stem, loop)`` for the first accepting cycle found,
    or ``None`` when the product language is empty.
    """
    visited: set[ProductState] = set()
    flagged: set[ProductState] = set()
    cap = product.state_cap

    for init in product.initial_states():
        if init in visited:
            continue
        visited.add(init)
        path = [init]
        on_path = {init: 0}
        iters = [iter(product.successors(init))]
        while iters:
            advanced = False
            for nxt in iters[-1]:
                if nxt not in visited:
                    visited.add(nxt)
                    if len(visited) > cap:
                        raise ResourceLimitError(f"product exceeded {cap} states")
                    on_path[nxt] = len(path)
                    path.append(nxt)
                    iters.append(iter(product.successors(nxt)))
                    advanced = True
                    break
            if advanced:
                continue
            top = path[-1]
            if product.accepting(top):
                cycle = _inner_dfs(product, top, on_path, flagged)
                if cycle is not None:
                    j = on_path[cycle[-1]]
                    return path[:j], path[j:] + cycle[1:-1]
            iters.pop()
            path.pop()
            del on_path[top]
    return None


def _inner_dfs(product: Product, seed: ProductState, on_path, flagged) -> list[ProductState] | None:
    """Path from ``seed`` to a state on the outer stack, ending with that state."""
    trail = [seed]
    iters = [iter(product.successors(seed))]
    flagged.add(seed)
    while iters:
        advanced = False
        for nxt in iters[-1]:
            if nxt in on_path:
                return trail + [nxt]
            if nxt not in flagged:
                flagged.add(nxt)
                trail.append(nxt)
                iters.append(iter(product.successors(nxt)))
                advanced = True
                break
        if not advanced:
            iters.pop()
            trail.pop()
    return None


def check(k: KripkeStructure, f: Formula, state_cap: int = DEFAULT_STATE_CAP,
          reuse_automata: bool = False) -> Verdict:
    """Decide whether every path of ``k`` from an initial state satisfies ``f``.

    A violated verdict carries the first lasso found; iteration order is
    fixed, so the witness is deterministic. ``reuse_automata`` memoizes the
    translation of ``!f`` across calls; labeling leaves it off so each
    measured check pays for its own translation.
    """
    translate = cached_ltl_to_buchi if reuse_automata else ltl_to_buchi
    aut = translate(to_nnf(Not(f)), state_cap)
    found = find_accepting_lasso(Product(k, aut, state_cap))
    if found is None:
        return Verdict(True)
    stem, loop = found
    return Verdict(False, Lasso(tuple(s for s, _, _ in stem), tuple(s for s, _, _ in loop)))


def accepts_lasso_word(aut: BuchiAutomaton, stem, loop) -> bool:
    """Membership of ``stem . loop^omega`` in the automaton's language.

    The word is viewed as a single-path Kripke structure and the product is
    tested for an accepting cycle.
    """
    word = KripkeStructure.word_structure(stem, loop)
    return find_accepting_lasso(Product(word, aut)) is not None
