"""Tokenizer for the expression language.

The alphabet is ASCII: numbers, identifiers, ``+ - * / ^``, parentheses and
commas.  Whitespace separates tokens and is dropped; anything else raises
:class:`LexError` at its offset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

NUMBER = "number"
IDENT = "identifier"
OPERATOR = "operator"
PAREN = "parenthesis"
COMMA = "comma"

# An exponent part is only consumed when digits follow, so "2e" lexes as the
# number 2 followed by the identifier e.
_NUMBER_RE = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPERATORS = frozenset("+-*/^")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens, recording 0-based character offsets."""
    tokens: list[Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPERATORS:
            tokens.append(Token(OPERATOR, ch, i))
            i += 1
        elif ch in "()":
            tokens.append(Token(PAREN, ch, i))
            i += 1
        elif ch == ",":
            tokens.append(Token(COMMA, ch, i))
            i += 1
        elif ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            m = _NUMBER_RE.match(source, i)
            assert m is not None
            tokens.append(Token(NUMBER, m.group(), i))
            i = m.end()
        elif ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(source, i)
            assert m is not None
            tokens.append(Token(IDENT, m.group(), i))
            i = m.end()
        else:
            raise LexError(i, ch)
    return tokens
