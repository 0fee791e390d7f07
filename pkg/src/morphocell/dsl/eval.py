"""Evaluation of expression trees.

Two routes produce bit-identical results:

* :func:`evaluate` walks the tree directly.  It is the reference semantics
  and the only route that raises :class:`DomainError` to the caller.
* :func:`compile_program` flattens the tree into a postfix instruction list
  for the sampling kernels and also emits a plain Python closure built from
  the same guard helpers, so both kernel lanes agree with :func:`evaluate`
  to the last bit at every valid point.

Guard semantics: ``ln`` and ``sqrt`` reject non-positive and negative
arguments, division rejects a zero divisor, ``a^b`` rejects a negative base
with a non-integer exponent and ``0^b`` with ``b < 0``, while ``0^0 = 1``.
Overflow is not an error; it saturates to infinity exactly as the C library
does, and the samplers later turn any non-finite sample into a hole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from ..errors import DomainError, TimeError, UnboundParamError
from .ast import (
    NAMED_CONSTANTS,
    Binary,
    Call,
    Constant,
    Expr,
    NamedConst,
    Param,
    Unary,
    Var,
    uses_var,
)

# --- guarded primitives ----------------------------------------------------
# Shared by the tree walker and the generated closures.  Each defers to the
# math module (hence the platform C library) on the happy path.


def _div(a: float, b: float) -> float:
    if b == 0.0:
        raise DomainError("division by zero")
    return a / b


def _pow(a: float, b: float) -> float:
    if a == 0.0:
        if b == 0.0:
            return 1.0
        if b < 0.0:
            raise DomainError("zero raised to a negative power")
    elif a < 0.0 and not b.is_integer():
        raise DomainError(
            f"negative base {a!r} with non-integer exponent {b!r}"
        )
    try:
        return math.pow(a, b)
    except OverflowError:
        if a < 0.0 and math.fmod(b, 2.0) != 0.0:
            return -math.inf
        return math.inf


def _ln(a: float) -> float:
    if a <= 0.0:
        raise DomainError(f"ln of non-positive value {a!r}")
    return math.log(a)


def _sqrt(a: float) -> float:
    if a < 0.0:
        raise DomainError(f"square root of negative value {a!r}")
    return math.sqrt(a)


def _exp(a: float) -> float:
    try:
        return math.exp(a)
    except OverflowError:
        return math.inf


def _min(a: float, b: float) -> float:
    return b if b < a else a


def _max(a: float, b: float) -> float:
    return b if b > a else a


def _sin(a: float) -> float:
    try:
        return math.sin(a)
    except ValueError:  # infinite argument
        raise DomainError("sin of an infinite value") from None


def _cos(a: float) -> float:
    try:
        return math.cos(a)
    except ValueError:  # infinite argument
        raise DomainError("cos of an infinite value") from None


# --- reference tree walk ---------------------------------------------------

_CALLS: dict[str, Callable[..., float]] = {
    "abs": abs,
    "sqrt": _sqrt,
    "exp": _exp,
    "ln": _ln,
    "sin": _sin,
    "cos": _cos,
    "atan2": math.atan2,
    "min": _min,
    "max": _max,
}


def check_time(tree: Expr, t: float) -> None:
    """Raise :class:`TimeError` when ``tree`` reads ``t`` and ``t`` is not positive."""
    if uses_var(tree, "t") and not t > 0.0:
        raise TimeError(f"time must be positive, got {t!r}")


def evaluate(
    tree: Expr,
    x: float = 0.0,
    y: float = 0.0,
    z: float = 0.0,
    t: float = 1.0,
    params: Mapping[str, float] | None = None,
) -> float:
    """Evaluate ``tree`` at a single point.

    Every free parameter must appear in ``params`` or
    :class:`UnboundParamError` is raised.  Points outside a function's
    domain raise :class:`DomainError`; a non-positive ``t`` raises
    :class:`TimeError` when the expression depends on time.
    """
    check_time(tree, t)
    return _walk(tree, x, y, z, t, params or {})


def _walk(
    tree: Expr,
    x: float,
    y: float,
    z: float,
    t: float,
    params: Mapping[str, float],
) -> float:
    if isinstance(tree, Constant):
        return tree.value
    if isinstance(tree, NamedConst):
        return NAMED_CONSTANTS[tree.name]
    if isinstance(tree, Var):
        if tree.name == "x":
            return x
        if tree.name == "y":
            return y
        if tree.name == "z":
            return z
        return t
    if isinstance(tree, Param):
        try:
            return float(params[tree.name])
        except KeyError:
            raise UnboundParamError(tree.name) from None
    if isinstance(tree, Unary):
        return -_walk(tree.operand, x, y, z, t, params)
    if isinstance(tree, Binary):
        a = _walk(tree.left, x, y, z, t, params)
        b = _walk(tree.right, x, y, z, t, params)
        if tree.op == "+":
            return a + b
        if tree.op == "-":
            return a - b
        if tree.op == "*":
            return a * b
        if tree.op == "/":
            return _div(a, b)
        return _pow(a, b)
    assert isinstance(tree, Call)
    args = [_walk(arg, x, y, z, t, params) for arg in tree.args]
    return _CALLS[tree.func](*args)


# --- postfix compilation ---------------------------------------------------

OP_CONST = 0
OP_X = 1
OP_Y = 2
OP_Z = 3
OP_T = 4
OP_NEG = 5
OP_ADD = 6
OP_SUB = 7
OP_MUL = 8
OP_DIV = 9
OP_POW = 10
OP_ABS = 11
OP_SQRT = 12
OP_EXP = 13
OP_LN = 14
OP_SIN = 15
OP_COS = 16
OP_ATAN2 = 17
OP_MIN = 18
OP_MAX = 19

_VAR_OPS = {"x": OP_X, "y": OP_Y, "z": OP_Z, "t": OP_T}
_BINARY_OPS = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV, "^": OP_POW}
_CALL_OPS = {
    "abs": OP_ABS,
    "sqrt": OP_SQRT,
    "exp": OP_EXP,
    "ln": OP_LN,
    "sin": OP_SIN,
    "cos": OP_COS,
    "atan2": OP_ATAN2,
    "min": OP_MIN,
    "max": OP_MAX,
}


@dataclass(frozen=True)
class Program:
    """A compiled expression: postfix instructions plus a Python closure.

    ``codes[i]`` is the opcode of instruction ``i``; for ``OP_CONST`` the
    matching ``cargs[i]`` indexes into ``consts``.  ``stack_need`` is the
    exact evaluation stack depth.  ``pyfunc(x, y, z, t)`` computes the same
    value as the instruction list, bit for bit, raising
    :class:`DomainError` where the kernels would record a hole.
    """

    codes: np.ndarray
    cargs: np.ndarray
    consts: np.ndarray
    stack_need: int
    pyfunc: Callable[[float, float, float, float], float]
    uses_t: bool


_GEN_NAMESPACE = {
    "__builtins__": {},
    "_div": _div,
    "_pow": _pow,
    "_ln": _ln,
    "_sqrt": _sqrt,
    "_exp": _exp,
    "_min": _min,
    "_max": _max,
    "_abs": abs,
    "_sin": _sin,
    "_cos": _cos,
    "_atan2": math.atan2,
}

_GEN_CALLS = {
    "abs": "_abs",
    "sqrt": "_sqrt",
    "exp": "_exp",
    "ln": "_ln",
    "sin": "_sin",
    "cos": "_cos",
    "atan2": "_atan2",
    "min": "_min",
    "max": "_max",
}


def compile_program(tree: Expr, params: Mapping[str, float] | None = None) -> Program:
    """Flatten ``tree`` for the sampling kernels, binding all parameters now."""
    bound = params or {}
    codes: list[int] = []
    cargs: list[int] = []
    consts: list[float] = []
    depth = 0
    peak = 0

    def push_const(value: float) -> None:
        codes.append(OP_CONST)
        cargs.append(len(consts))
        consts.append(value)

    def emit(node: Expr) -> None:
        nonlocal depth, peak
        if isinstance(node, Constant):
            push_const(node.value)
        elif isinstance(node, NamedConst):
            push_const(NAMED_CONSTANTS[node.name])
        elif isinstance(node, Param):
            try:
                push_const(float(bound[node.name]))
            except KeyError:
                raise UnboundParamError(node.name) from None
        elif isinstance(node, Var):
            codes.append(_VAR_OPS[node.name])
            cargs.append(-1)
        elif isinstance(node, Unary):
            emit(node.operand)
            codes.append(OP_NEG)
            cargs.append(-1)
            return  # pops one, pushes one
        elif isinstance(node, Binary):
            emit(node.left)
            emit(node.right)
            codes.append(_BINARY_OPS[node.op])
            cargs.append(-1)
            depth -= 1
            return
        else:
            assert isinstance(node, Call)
            for arg in node.args:
                emit(arg)
            codes.append(_CALL_OPS[node.func])
            cargs.append(-1)
            depth -= len(node.args) - 1
            return
        depth += 1
        peak = max(peak, depth)

    def gen(node: Expr) -> str:
        if isinstance(node, Constant):
            return repr(node.value)
        if isinstance(node, NamedConst):
            return repr(NAMED_CONSTANTS[node.name])
        if isinstance(node, Param):
            return repr(float(bound[node.name]))
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Unary):
            return f"(-{gen(node.operand)})"
        if isinstance(node, Binary):
            a, b = gen(node.left), gen(node.right)
            if node.op == "/":
                return f"_div({a}, {b})"
            if node.op == "^":
                return f"_pow({a}, {b})"
            return f"({a} {node.op} {b})"
        assert isinstance(node, Call)
        args = ", ".join(gen(arg) for arg in node.args)
        return f"{_GEN_CALLS[node.func]}({args})"

    emit(tree)
    source = f"lambda x, y, z, t: {gen(tree)}"
    pyfunc = eval(compile(source, "<compiled expression>", "eval"), dict(_GEN_NAMESPACE))
    return Program(
        codes=np.asarray(codes, dtype=np.int32),
        cargs=np.asarray(cargs, dtype=np.int32),
        consts=np.asarray(consts, dtype=np.float64),
        stack_need=peak,
        pyfunc=pyfunc,
        uses_t=uses_var(tree, "t"),
    )
