"""Shared output plumbing for the writers."""

from __future__ import annotations

import os
from typing import IO, Union

from .errors import SinkError

Sink = Union[str, os.PathLike, IO[str]]


def write_text(sink: Sink, text: str) -> int:
    """Write ``text`` to a path or text stream; returns the UTF-8 byte count.

    Paths are written with '\\n' newlines regardless of platform so output
    stays byte-stable.  I/O failures surface as :class:`SinkError`.
    """
    try:
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        else:
            sink.write(text)
    except OSError as exc:
        raise SinkError(f"could not write output: {exc}") from exc
    return len(text.encode("utf-8"))


def fmt(value: float) -> str:
    """Fixed 9-significant-digit decimal used by every writer."""
    return f"{value:.9g}"
