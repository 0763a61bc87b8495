from .formula import (
    FALSE,
    TRUE,
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
    atoms_of,
    format_ltl,
    formula_depth,
    formula_length,
    is_nnf,
    to_nnf,
)
from .generate import GenSpec, default_alphabet, random_formula, random_kripke
from .kripke import KripkeStructure, dump_kripke, parse_kripke, validate_kripke
from .parser import parse_ltl

__all__ = [
    "FALSE", "TRUE", "And", "Atom", "FalseConst", "Finally", "Formula", "Globally",
    "Implies", "Next", "Not", "Or", "Release", "TrueConst", "Until", "atoms_of",
    "format_ltl", "formula_depth", "formula_length", "is_nnf", "to_nnf", "GenSpec",
    "default_alphabet", "random_formula", "random_kripke", "KripkeStructure",
    "dump_kripke", "parse_kripke", "validate_kripke", "parse_ltl",
]
