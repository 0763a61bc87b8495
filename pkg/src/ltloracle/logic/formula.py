"""LTL abstract syntax, canonical printing and negation normal form."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Formula:
    """Base class of all LTL nodes."""

    def __str__(self) -> str:
        return format_ltl(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Finally(Formula):
    operand: Formula


@dataclass(frozen=True)
class Globally(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


TRUE = TrueConst()
FALSE = FalseConst()

LEAF_TYPES = (Atom, TrueConst, FalseConst)
UNARY_TYPES = (Not, Next, Finally, Globally)
BINARY_TYPES = (And, Or, Implies, Until, Release)
TEMPORAL_TYPES = (Next, Finally, Globally, Until, Release)

# kind name -> node class; also the vocabulary of GenSpec.operator_weights
KINDS: dict[str, type] = {
    "atom": Atom,
    "true": TrueConst,
    "false": FalseConst,
    "not": Not,
    "next": Next,
    "finally": Finally,
    "globally": Globally,
    "and": And,
    "or": Or,
    "implies": Implies,
    "until": Until,
    "release": Release,
}
KIND_OF: dict[type, str] = {cls: name for name, cls in KINDS.items()}

UNARY_SYMBOL = {Not: "!", Next: "X", Finally: "F", Globally: "G"}
BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Until: "U", Release: "R"}


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY_TYPES):
        return (f.operand,)
    if isinstance(f, BINARY_TYPES):
        return (f.left, f.right)
    return ()


def iter_nodes(f: Formula):
    """Preorder traversal without recursion."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def formula_length(f: Formula) -> int:
    """Number of AST nodes, operators and atom occurrences alike."""
    return sum(1 for _ in iter_nodes(f))


def formula_depth(f: Formula) -> int:
    depth = 0
    stack = [(f, 1)]
    while stack:
        node, d = stack.pop()
        depth = max(depth, d)
        stack.extend((c, d + 1) for c in children(node))
    return depth


def atoms_of(f: Formula) -> set[str]:
    return {n.name for n in iter_nodes(f) if isinstance(n, Atom)}


def format_ltl(f: Formula, symbols: dict | None = None) -> str:
    """Fully parenthesized canonical text, e.g. ``(G p)`` or ``(p U (X q))``.

    ``symbols`` optionally remaps operator spellings (node class -> string),
    which is how the NuSMV dialect is produced.
    """
    out: list[str] = []
    # explicit stack: length-500 formulas may nest deeply
    stack: list = [f]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if isinstance(item, Atom):
            out.append(item.name)
        elif isinstance(item, (TrueConst, FalseConst)):
            default = "true" if isinstance(item, TrueConst) else "false"
            out.append(symbols.get(type(item), default) if symbols else default)
        elif isinstance(item, UNARY_TYPES):
            sym = UNARY_SYMBOL[type(item)]
            if symbols:
                sym = symbols.get(type(item), sym)
            stack.extend([")", item.operand, f"({sym} "])
        else:
            sym = BINARY_SYMBOL[type(item)]
            if symbols:
                sym = symbols.get(type(item), sym)
            stack.extend([")", item.right, f" {sym} ", item.left, "("])
    return "".join(out)


def negate(f: Formula) -> Formula:
    return Not(f)


def to_nnf(f: Formula) -> Formula:
    """Push negations down to atoms and eliminate implication.

    F, G, U, R and X are kept; their duals are used when a negation passes
    through (``!G a = F !a``, ``!(a U b) = !a R !b``, ``!X a = X !a``).
    """
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    match f:
        case Atom():
            return Not(f) if neg else f
        case TrueConst():
            return FALSE if neg else TRUE
        case FalseConst():
            return TRUE if neg else FALSE
        case Not(operand=a):
            return _nnf(a, not neg)
        case Next(operand=a):
            return Next(_nnf(a, neg))
        case Finally(operand=a):
            return Globally(_nnf(a, True)) if neg else Finally(_nnf(a, False))
        case Globally(operand=a):
            return Finally(_nnf(a, True)) if neg else Globally(_nnf(a, False))
        case And(left=a, right=b):
            return Or(_nnf(a, True), _nnf(b, True)) if neg else And(_nnf(a, False), _nnf(b, False))
        case Or(left=a, right=b):
            return And(_nnf(a, True), _nnf(b, True)) if neg else Or(_nnf(a, False), _nnf(b, False))
        case Implies(left=a, right=b):
            # a -> b == !a | b
            return And(_nnf(a, False), _nnf(b, True)) if neg else Or(_nnf(a, True), _nnf(b, False))
        case Until(left=a, right=b):
            return Release(_nnf(a, True), _nnf(b, True)) if neg else Until(_nnf(a, False), _nnf(b, False))
        case Release(left=a, right=b):
            return Until(_nnf(a, True), _nnf(b, True)) if neg else Release(_nnf(a, False), _nnf(b, False))
    raise TypeError(f"not a formula node: {f!r}")


def is_nnf(f: Formula) -> bool:
    for node in iter_nodes(f):
        if isinstance(node, Implies):
            return False
        if isinstance(node, Not) and not isinstance(node.operand, Atom):
            return False
    return True
