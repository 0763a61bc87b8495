"""Text syntax for LTL.

Grammar (EBNF); binary operators are right-associative::

    formula  = implies ;
    implies  = or_ [ "->" implies ] ;
    or_      = and_ [ "|" or_ ] ;
    and_     = until [ "&" and_ ] ;
    until    = unary [ ("U" | "R") until ] ;
    unary    = ("!" | "X" | "F" | "G") unary | primary ;
    primary  = "true" | "false" | ident | "(" formula ")" ;
    ident    = [a-z][a-z0-9_]* ;

Binding strength, tightest first: ``! X F G``, then ``U R``, then ``&``,
then ``|``, then ``->``. ``TRUE``/``FALSE`` are accepted as constants too.
"""

from __future__ import annotations

import re
import sys
from collections.abc import Iterable

from ..errors import LtlSyntaxError, UnknownAtomError
from .formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    Until,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<op>[!&|()])|(?P<kw>[XFGUR])(?![A-Za-z0-9_])"
    r"|(?P<const>true|false|TRUE|FALSE)(?![A-Za-z0-9_])|(?P<ident>[a-z][a-z0-9_]*))"
)

_UNARY = {"!": Not, "X": Next, "F": Finally, "G": Globally}
# operator -> (precedence, class); higher binds tighter
_BINARY = {"->": (1, Implies), "|": (2, Or), "&": (3, And), "U": (4, Until), "R": (4, Release)}


def tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise LtlSyntaxError(f"unexpected character {text[start]!r}", start)
        tok = m.group(m.lastgroup)
        tokens.append((tok, m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: set[str] | None):
        self.tokens = tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.end = len(text)

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.end

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expr(self, min_prec: int = 1) -> Formula:
        left = self.unary()
        while True:
            tok = self.peek()
            if tok not in _BINARY or _BINARY[tok][0] < min_prec:
                return left
            prec, cls = _BINARY[tok]
            self.advance()
            # same level allowed on the right: right-associative
            left = cls(left, self.expr(prec))

    def unary(self) -> Formula:
        ops = []
        while self.peek() in _UNARY:
            ops.append(_UNARY[self.advance()])
        node = self.primary()
        for cls in reversed(ops):
            node = cls(node)
        return node

    def primary(self) -> Formula:
        tok = self.peek()
        at = self.pos()
        if tok is None:
            raise LtlSyntaxError("unexpected end of input", at)
        if tok == "(":
            self.advance()
            node = self.expr()
            if self.peek() != ")":
                raise LtlSyntaxError("expected ')'", self.pos())
            self.advance()
            return node
        if tok in ("true", "TRUE"):
            self.advance()
            return TRUE
        if tok in ("false", "FALSE"):
            self.advance()
            return FALSE
        if re.fullmatch(r"[a-z][a-z0-9_]*", tok):
            self.advance()
            if self.alphabet is not None and tok not in self.alphabet:
                raise UnknownAtomError(tok)
            return Atom(tok)
        raise LtlSyntaxError(f"unexpected token {tok!r}", at)


def parse_ltl(text: str, alphabet: Iterable[str] | None = None) -> Formula:
    """Parse ``text``; atoms must belong to ``alphabet`` when one is given."""
    if not text.strip():
        raise LtlSyntaxError("empty formula", 0)
    parser = _Parser(text, set(alphabet) if alphabet is not None else None)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        node = parser.expr()
    finally:
        sys.setrecursionlimit(limit)
    if parser.peek() is not None:
        raise LtlSyntaxError(f"unexpected token {parser.peek()!r}", parser.pos())
    return node
