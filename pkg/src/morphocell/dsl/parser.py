"""Recursive-descent parser for the expression language.

Grammar (``^`` is right-associative, unary minus binds between ``*`` and
``^``)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

An identifier is resolved in this order: function name (must be called),
named constant, variable (``x y z t``), otherwise a free parameter.
"""

from __future__ import annotations

from ..errors import ArityError, ParseError
from .ast import (
    FUNCTIONS,
    NAMED_CONSTANTS,
    VARIABLES,
    Binary,
    Call,
    Constant,
    Expr,
    NamedConst,
    Param,
    Unary,
    Var,
)
from .tokens import COMMA, IDENT, NUMBER, OPERATOR, PAREN, Token, tokenize


class _Parser:
    def __init__(self, tokens: list[Token], length: int) -> None:
        self.tokens = tokens
        self.length = length  # source length, for end-of-input positions
        self.index = 0

    def peek(self) -> Token | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def here(self) -> int:
        token = self.peek()
        return token.position if token is not None else self.length

    def expect(self, kind: str, lexeme: str, expected: str) -> Token:
        token = self.peek()
        if token is None or token.kind != kind or token.lexeme != lexeme:
            raise ParseError(self.here(), expected)
        return self.advance()

    def expr(self) -> Expr:
        node = self.term()
        while (token := self.peek()) is not None and token.lexeme in "+-":
            op = self.advance().lexeme
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while (token := self.peek()) is not None and token.lexeme in "*/":
            op = self.advance().lexeme
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        token = self.peek()
        if token is not None and token.kind == OPERATOR and token.lexeme == "-":
            self.advance()
            return Unary("-", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        token = self.peek()
        if token is not None and token.kind == OPERATOR and token.lexeme == "^":
            self.advance()
            return Binary("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        token = self.peek()
        if token is None:
            raise ParseError(self.length, "an expression")
        if token.kind == NUMBER:
            self.advance()
            return Constant(float(token.lexeme))
        if token.kind == PAREN and token.lexeme == "(":
            self.advance()
            node = self.expr()
            self.expect(PAREN, ")", "')'")
            return node
        if token.kind == IDENT:
            self.advance()
            return self.resolve(token)
        raise ParseError(token.position, "a number, name or '('")

    def resolve(self, token: Token) -> Expr:
        name = token.lexeme
        after = self.peek()
        called = after is not None and after.kind == PAREN and after.lexeme == "("
        if name in FUNCTIONS:
            if not called:
                raise ParseError(
                    self.here(), f"'(' after function name '{name}'"
                )
            return self.call(token)
        if called:
            raise ParseError(token.position, f"a known function, got '{name}'")
        if name in NAMED_CONSTANTS:
            return NamedConst(name)
        if name in VARIABLES:
            return Var(name)
        return Param(name)

    def call(self, token: Token) -> Expr:
        self.advance()  # opening '('
        args = [self.expr()]
        while (nxt := self.peek()) is not None and nxt.kind == COMMA:
            self.advance()
            args.append(self.expr())
        self.expect(PAREN, ")", "')'")
        arity = FUNCTIONS[token.lexeme]
        if len(args) != arity:
            raise ArityError(
                token.position,
                f"{arity} argument{'s' if arity != 1 else ''} to "
                f"'{token.lexeme}', got {len(args)}",
            )
        return Call(token.lexeme, tuple(args))


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree.

    Raises :class:`LexError` on an illegal character and :class:`ParseError`
    (or its subclass :class:`ArityError`) on malformed syntax.
    """
    parser = _Parser(tokenize(source), len(source))
    node = parser.expr()
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(trailing.position, "end of input")
    return node
