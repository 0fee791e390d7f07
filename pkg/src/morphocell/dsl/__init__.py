"""Expression language: parsing, evaluation and compilation."""

from .ast import (
    FUNCTIONS,
    NAMED_CONSTANTS,
    PHI,
    VARIABLES,
    Binary,
    Call,
    Constant,
    Expr,
    NamedConst,
    Param,
    Unary,
    Var,
    free_params,
    to_source,
    uses_var,
)
from .eval import Program, check_time, compile_program, evaluate
from .parser import parse
from .tokens import Token, tokenize

__all__ = [
    "FUNCTIONS",
    "NAMED_CONSTANTS",
    "PHI",
    "VARIABLES",
    "Binary",
    "Call",
    "Constant",
    "Expr",
    "NamedConst",
    "Param",
    "Program",
    "Token",
    "Unary",
    "Var",
    "check_time",
    "compile_program",
    "evaluate",
    "free_params",
    "parse",
    "to_source",
    "tokenize",
    "uses_var",
]
