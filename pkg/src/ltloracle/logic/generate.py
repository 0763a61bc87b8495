"""Seeded random generation of formulas and Kripke structures."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from ..errors import ImpossibleLengthError, InvalidSpecError
from ..rng import SplitMix64, derive_seed
from .formula import (
    BINARY_TYPES,
    FALSE,
    KINDS,
    TRUE,
    UNARY_TYPES,
    Atom,
    FalseConst,
    Formula,
    TrueConst,
)
from .kripke import KripkeStructure

DEFAULT_OPERATOR_WEIGHTS = {
    "atom": 6.0,
    "true": 0.25,
    "false": 0.25,
    "not": 1.0,
    "next": 1.0,
    "finally": 1.0,
    "globally": 1.0,
    "and": 1.0,
    "or": 1.0,
    "implies": 1.0,
    "until": 1.0,
    "release": 0.5,
}

# stream tags so the Kripke and formula draws never share random numbers
_KRIPKE_STREAM = 1
_FORMULA_STREAM = 2


@dataclass(frozen=True)
class GenSpec:
    seed: int = 0
    state_range: tuple[int, int] = (2, 5)
    ap_count: int = 2
    edge_density: float = 0.35
    formula_length: int = 15
    operator_weights: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_OPERATOR_WEIGHTS)
    )
    init_probability: float = 0.2
    label_probability: float = 0.5

    def validate(self) -> None:
        lo, hi = self.state_range
        if lo < 1 or hi < lo:
            raise InvalidSpecError(f"bad state range {self.state_range}")
        if self.ap_count < 1:
            raise InvalidSpecError("ap_count must be >= 1")
        if not 0 < self.edge_density <= 1:
            raise InvalidSpecError("edge_density must lie in (0, 1]")
        if self.formula_length < 1:
            raise InvalidSpecError("formula_length must be >= 1")
        unknown = set(self.operator_weights) - set(KINDS)
        if unknown:
            raise InvalidSpecError(f"unknown operator kinds {sorted(unknown)}")
        if any(w < 0 for w in self.operator_weights.values()):
            raise InvalidSpecError("operator weights must be nonnegative")
        if not any(w > 0 for w in self.operator_weights.values()):
            raise InvalidSpecError("at least one operator weight must be positive")
        if not 0 <= self.init_probability <= 1 or not 0 <= self.label_probability <= 1:
            raise InvalidSpecError("probabilities must lie in [0, 1]")


def default_alphabet(ap_count: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(ap_count))


def _weights_by_arity(weights: Mapping[str, float]):
    leaves, unary, binary = [], [], []
    for name, cls in KINDS.items():
        w = float(weights.get(name, 0.0))
        if w <= 0:
            continue
        if cls in UNARY_TYPES:
            unary.append((cls, w))
        elif cls in BINARY_TYPES:
            binary.append((cls, w))
        else:
            leaves.append((cls, w))
    return leaves, unary, binary


_TABLES: dict[tuple[bool, bool, bool], tuple[list[bool], dict[int, list[int]]]] = {}


class _FormulaBuilder:
    def __init__(self, weights: Mapping[str, float], alphabet: Sequence[str], rng: SplitMix64):
        self.leaves, self.unary, self.binary = _weights_by_arity(weights)
        self.alphabet = list(alphabet)
        if not self.alphabet:
            self.leaves = [(c, w) for c, w in self.leaves if c is not Atom]
        self.rng = rng
        # feasibility depends only on which arities are enabled
        key = (bool(self.leaves), bool(self.unary), bool(self.binary))
        self._feasible, self._splits = _TABLES.setdefault(key, ([False, key[0]], {}))

    def feasible(self, n: int) -> bool:
        """Can a tree of exactly ``n`` nodes be built from the enabled kinds?"""
        while len(self._feasible) <= n:
            m = len(self._feasible)
            ok = bool(self.unary) and self._feasible[m - 1]
            if not ok and self.binary:
                ok = any(self._feasible[i] and self._feasible[m - 1 - i] for i in range(1, m - 1))
            self._feasible.append(ok)
        return self._feasible[n]

    def build(self, n: int) -> Formula:
        if not self.feasible(n):
            raise ImpossibleLengthError(f"no formula of length {n} with the enabled operators")
        # iterative construction: slots hold (budget, parent list, index)
        root: list = [None]
        todo = [(n, root, 0)]
        pending = []  # (node class, holder, index, child holders) in creation order
        while todo:
            budget, holder, idx = todo.pop()
            cls, split = self._choose(budget)
            if cls is Atom:
                holder[idx] = Atom(self.alphabet[self.rng.below(len(self.alphabet))])
            elif cls is TrueConst:
                holder[idx] = TRUE
            elif cls is FalseConst:
                holder[idx] = FALSE
            elif cls in UNARY_TYPES:
                kids: list = [None]
                pending.append((cls, holder, idx, kids))
                todo.append((budget - 1, kids, 0))
            else:
                kids = [None, None]
                pending.append((cls, holder, idx, kids))
                # right pushed first so the left subtree is drawn first
                todo.append((budget - 1 - split, kids, 1))
                todo.append((split, kids, 0))
        for cls, holder, idx, kids in reversed(pending):
            holder[idx] = cls(*kids)
        return root[0]

    def _choose(self, budget: int):
        options = []
        if budget == 1:
            options = [(c, w, None) for c, w in self.leaves]
        else:
            if self.feasible(budget - 1):
                options += [(c, w, None) for c, w in self.unary]
            if self.binary and budget >= 3:
                splits = self._splits.get(budget)
                if splits is None:
                    splits = [i for i in range(1, budget - 1)
                              if self.feasible(i) and self.feasible(budget - 1 - i)]
                    self._splits[budget] = splits
                if splits:
                    options += [(c, w, splits) for c, w in self.binary]
        k = self.rng.weighted_index([w for _, w, _ in options])
        cls, _, splits = options[k]
        split = splits[self.rng.below(len(splits))] if splits else None
        return cls, split


def random_formula(spec: GenSpec, alphabet: Sequence[str] | None = None) -> Formula:
    """Random formula with exactly ``spec.formula_length`` nodes.

    Node kinds are drawn by ``spec.operator_weights`` among those whose
    smallest subtree still fits the remaining budget; a binary node splits
    its budget uniformly over the feasible (left, right) sizes.
    """
    spec.validate()
    if alphabet is None:
        alphabet = default_alphabet(spec.ap_count)
    rng = SplitMix64(derive_seed(spec.seed, _FORMULA_STREAM))
    return _FormulaBuilder(spec.operator_weights, alphabet, rng).build(spec.formula_length)


def random_kripke(spec: GenSpec, alphabet: Sequence[str] | None = None) -> KripkeStructure:
    spec.validate()
    if alphabet is None:
        alphabet = default_alphabet(spec.ap_count)
    rng = SplitMix64(derive_seed(spec.seed, _KRIPKE_STREAM))
    n = rng.between(*spec.state_range)
    transitions = []
    for _ in range(n):
        succ = [t for t in range(n) if rng.random() < spec.edge_density]
        if not succ:
            succ = [rng.below(n)]
        transitions.append(tuple(succ))
    labels = tuple(
        frozenset(a for a in alphabet if rng.random() < spec.label_probability)
        for _ in range(n)
    )
    initial = tuple(s for s in range(n) if rng.random() < spec.init_probability)
    if not initial:
        initial = (rng.below(n),)
    return KripkeStructure(n, initial, tuple(transitions), labels, tuple(alphabet))
