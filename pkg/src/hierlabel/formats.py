"""Plain-text matrix format used by every CLI subcommand.

The format is deliberately minimal so that outputs can be diffed and
byte-compared across runs: the first line carries ``N C`` (row and column
counts), followed by exactly N lines of C space-separated decimals.
Integer-valued entries are written without a decimal point; everything else
uses the shortest representation that round-trips to the same float.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np

from .errors import ParseError

Source = Union[str, Path, IO[str], Iterable[str]]


def format_value(v: float) -> str:
    f = float(v)
    if f.is_integer():
        return str(int(f))
    return repr(f)


def dump_matrix(arr) -> str:
    a = np.atleast_2d(np.asarray(arr, dtype=float))
    if a.ndim != 2:
        raise ParseError(f"can only serialize 1- or 2-dimensional arrays, got shape {a.shape}")
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def _iter_lines(source: Source):
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None
        return text.splitlines()
    if hasattr(source, "read"):
        return source.read().splitlines()
    return [line.rstrip("\n") for line in source]


def load_matrix(source: Source) -> np.ndarray:
    """Parse a matrix file; raises ParseError on any malformation."""
    lines = list(_iter_lines(source))
    # trailing blank lines are tolerated, interior ones are not
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty matrix input")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"matrix header must be 'N C', got {lines[0]!r}")
    try:
        n, c = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"matrix header must be two integers, got {lines[0]!r}") from None
    if n < 0 or c < 1:
        raise ParseError(f"invalid matrix dimensions N={n}, C={c}")
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} data rows, found {len(lines) - 1}")
    out = np.empty((n, c), dtype=float)
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != c:
            raise ParseError(f"row {i + 1} has {len(parts)} entries, expected {c}")
        try:
            out[i] = [float(p) for p in parts]
        except ValueError:
            raise ParseError(f"row {i + 1} contains a non-numeric entry: {line!r}") from None
    return out


def load_vector(source: Source, name: str = "vector") -> np.ndarray:
    """Parse a matrix file that must contain exactly one row."""
    mat = load_matrix(source)
    if mat.shape[0] != 1:
        raise ParseError(f"{name} must be a single-row matrix, got {mat.shape[0]} rows")
    return mat[0]
