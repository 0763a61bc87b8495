"""Instance suites for cross-validating the two checkers."""

from __future__ import annotations

import itertools

from ..logic.formula import Formula
from ..logic.generate import GenSpec, random_formula, random_kripke
from ..logic.kripke import KripkeStructure
from ..logic.parser import parse_ltl
from ..rng import SplitMix64

# 30 templates over the single proposition p, at most 3 temporal operators each
FORMULA_TEMPLATES = [
    "p",
    "! p",
    "true",
    "false",
    "X p",
    "X X p",
    "F p",
    "G p",
    "G ! p",
    "F ! p",
    "G F p",
    "F G p",
    "G F ! p",
    "F G ! p",
    "p U ! p",
    "! p U p",
    "p R ! p",
    "false R p",
    "true U ! p",
    "G (p -> X ! p)",
    "G (p -> X p)",
    "G (p -> F ! p)",
    "F (p & X p)",
    "p -> X G p",
    "X (p U G ! p)",
    "(G F p) -> (G F ! p)",
    "(F G p) | (F G ! p)",
    "G (p | X p)",
    "p U (X ! p)",
    "X p R (p | X p)",
]


def template_formulas() -> list[Formula]:
    return [parse_ltl(t, ["p"]) for t in FORMULA_TEMPLATES]


def _canonical(n, succ, labels, initial):
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        key = (
            tuple(tuple(sorted(perm[t] for t in succ[inv[s]])) for s in range(n)),
            tuple(labels[inv[s]] for s in range(n)),
            tuple(sorted(perm[s] for s in initial)),
        )
        if best is None or key < best:
            best = key
    return best


def exhaustive_kripke(max_states: int = 3, ap: str = "p") -> list[KripkeStructure]:
    """Every total structure over one proposition with 1..max_states states.

    Structures that differ only by renumbering states are kept once.
    """
    out = []
    for n in range(1, max_states + 1):
        subsets = [tuple(c) for r in range(1, n + 1) for c in itertools.combinations(range(n), r)]
        seen = set()
        for succ in itertools.product(subsets, repeat=n):
            for labels in itertools.product((False, True), repeat=n):
                for initial in subsets:
                    key = _canonical(n, succ, labels, initial)
                    if key in seen:
                        continue
                    seen.add(key)
                    tr, lab, init = key
                    out.append(KripkeStructure(
                        n, init, tr,
                        tuple(frozenset([ap]) if x else frozenset() for x in lab),
                        (ap,),
                    ))
    return out


def random_instances(count: int = 1000, seed: int = 2024, max_states: int = 6,
                     ap_count: int = 2, max_length: int = 15):
    """Seeded small random ``(K, f)`` pairs for agreement testing."""
    rng = SplitMix64(seed)
    for _ in range(count):
        spec = GenSpec(
            seed=rng.next_u64(),
            state_range=(1, max_states),
            ap_count=ap_count,
            edge_density=0.4,
            formula_length=rng.between(1, max_length),
        )
        yield random_kripke(spec), random_formula(spec)
