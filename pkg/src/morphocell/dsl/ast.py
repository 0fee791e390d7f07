"""Expression tree nodes and structural queries.

Nodes are frozen dataclasses, so trees hash and compare by value and can be
used as dict keys or cached.  ``to_source`` renders a tree back to the
surface syntax with the minimal parenthesisation that preserves structure;
``parse(to_source(tree)) == tree`` holds for every tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

#: The golden ratio, (1 + sqrt(5)) / 2.
PHI: float = (1.0 + math.sqrt(5.0)) / 2.0

#: Free-standing named constants usable in expressions.
NAMED_CONSTANTS: dict[str, float] = {"pi": math.pi, "e": math.e, "phi": PHI}

#: Spatial and time variables, always lowercase single letters.
VARIABLES: frozenset[str] = frozenset({"x", "y", "z", "t"})

#: Built-in functions mapped to their arity.
FUNCTIONS: dict[str, int] = {
    "abs": 1,
    "sqrt": 1,
    "exp": 1,
    "ln": 1,
    "sin": 1,
    "cos": 1,
    "atan2": 2,
    "min": 2,
    "max": 2,
}


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class NamedConst:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    """A free parameter, bound to a number at evaluation time."""

    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


Expr = Union[Constant, NamedConst, Var, Param, Unary, Binary, Call]


def free_params(tree: Expr) -> frozenset[str]:
    """Names of all parameters appearing in ``tree``, in no particular order."""
    out: set[str] = set()
    _collect_params(tree, out)
    return frozenset(out)


def _collect_params(tree: Expr, out: set[str]) -> None:
    if isinstance(tree, Param):
        out.add(tree.name)
    elif isinstance(tree, Unary):
        _collect_params(tree.operand, out)
    elif isinstance(tree, Binary):
        _collect_params(tree.left, out)
        _collect_params(tree.right, out)
    elif isinstance(tree, Call):
        for arg in tree.args:
            _collect_params(arg, out)


def uses_var(tree: Expr, name: str) -> bool:
    """True when the variable ``name`` occurs anywhere in ``tree``."""
    if isinstance(tree, Var):
        return tree.name == name
    if isinstance(tree, Unary):
        return uses_var(tree.operand, name)
    if isinstance(tree, Binary):
        return uses_var(tree.left, name) or uses_var(tree.right, name)
    if isinstance(tree, Call):
        return any(uses_var(arg, name) for arg in tree.args)
    return False


# Operator precedence, higher binds tighter.  Exponentiation is
# right-associative; unary minus sits between '*' and '^'.
_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


def _precedence(tree: Expr) -> int:
    if isinstance(tree, Binary):
        if tree.op in "+-":
            return _PREC_ADD
        if tree.op in "*/":
            return _PREC_MUL
        return _PREC_POW
    if isinstance(tree, Unary):
        return _PREC_NEG
    if isinstance(tree, Constant) and tree.value < 0:
        return _PREC_NEG
    return _PREC_ATOM


def _format_number(value: float) -> str:
    if value != value or value in (math.inf, -math.inf):
        raise ValueError(f"non-finite constant {value!r} has no source form")
    if value == 0.0:
        return "0"  # covers -0.0, whose repr would not re-tokenize as a literal
    text = repr(value)
    if text.endswith(".0"):
        text = text[:-2]
    return text


def to_source(tree: Expr) -> str:
    """Render ``tree`` as parseable source with minimal parentheses."""
    if isinstance(tree, Constant):
        # The parser never builds negative literals (it builds Unary), so
        # render them through the unary path to stay parseable.
        if tree.value < 0:
            return to_source(Unary("-", Constant(-tree.value)))
        return _format_number(tree.value)
    if isinstance(tree, (NamedConst, Var, Param)):
        return tree.name
    if isinstance(tree, Unary):
        inner = to_source(tree.operand)
        if _precedence(tree.operand) < _PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(tree, Call):
        return f"{tree.func}({', '.join(to_source(a) for a in tree.args)})"
    assert isinstance(tree, Binary)
    left, right = to_source(tree.left), to_source(tree.right)
    if tree.op in "+-":
        if _precedence(tree.left) < _PREC_ADD:
            left = f"({left})"
        if _precedence(tree.right) <= _PREC_ADD:
            right = f"({right})"
        return f"{left} {tree.op} {right}"
    if tree.op in "*/":
        if _precedence(tree.left) < _PREC_MUL:
            left = f"({left})"
        if _precedence(tree.right) <= _PREC_MUL:
            right = f"({right})"
        return f"{left}{tree.op}{right}"
    # '^' is right-associative and binds tighter than unary minus on the left.
    if _precedence(tree.left) <= _PREC_POW:
        left = f"({left})"
    if _precedence(tree.right) <= _PREC_MUL:
        right = f"({right})"
    return f"{left}^{right}"
