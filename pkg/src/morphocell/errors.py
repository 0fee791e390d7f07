"""Exception taxonomy shared across the package.

Lexing/parsing problems carry source positions; numeric problems carry just a
message.  CLI and HTTP layers map these onto exit codes and status codes.
"""

from __future__ import annotations


class MorphocellError(Exception):
    """Base class for every error raised by this package."""


class LexError(MorphocellError):
    """A character outside the expression alphabet."""

    def __init__(self, position: int, character: str):
        super().__init__(f"unexpected character {character!r} at offset {position}")
        self.position = position
        self.character = character


class ParseError(MorphocellError):
    """Token stream does not match the grammar."""

    def __init__(self, position: int, expected: str):
        super().__init__(f"at offset {position}: expected {expected}")
        self.position = position
        self.expected = expected


class ArityError(ParseError):
    """A function call with the wrong number of arguments."""


class DomainError(MorphocellError):
    """Evaluation left the real domain (log of a non-positive value, ...)."""


class UnboundParamError(MorphocellError):
    """An expression parameter without a binding."""

    def __init__(self, name: str):
        super().__init__(f"parameter {name!r} is not bound")
        self.name = name


class TimeError(MorphocellError):
    """A non-positive time value where the form requires t > 0."""


class OriginError(MorphocellError):
    """A polar-coordinate query at the origin, where the angle is undefined."""


class EmptyMeshError(MorphocellError):
    """A meshing step produced (or was asked to emit) no geometry."""


class SinkError(MorphocellError):
    """Writing geometry to a file or stream failed."""
