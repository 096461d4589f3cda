"""Plain-text matrix files.

Format: a header line ``rows cols``, then ``rows`` lines of ``cols``
whitespace-separated decimal integers (any length). Lines starting with
``#`` and blank lines are ignored. Vectors are single-column matrices.
ASCII decimal with LF newlines, so files diff cleanly and round-trip
bit-exactly at any precision.
"""

from __future__ import annotations

import os
from .exact import Matrix


class MatrixParseError(ValueError):
    """Malformed matrix text; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def parse_matrix(text: str) -> Matrix:
    significant = [
        (no, stripped)
        for no, line in enumerate(text.splitlines(), start=1)
        if (stripped := line.strip()) and not stripped.startswith("#")
    ]
    if not significant:
        raise MatrixParseError(1, "missing 'rows cols' header")
    header_no, header = significant[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixParseError(header_no, "header must be exactly 'rows cols'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixParseError(header_no, "header entries must be integers") from None
    if n < 0 or m < 0:
        raise MatrixParseError(header_no, "dimensions must be non-negative")
    body = significant[1:]
    if len(body) != n:
        bad_no = body[n][0] if len(body) > n else (body[-1][0] if body else header_no)
        raise MatrixParseError(bad_no, f"expected {n} matrix rows, found {len(body)}")
    rows = []
    for no, line in body:
        tokens = line.split()
        if len(tokens) != m:
            raise MatrixParseError(no, f"expected {m} entries, found {len(tokens)}")
        try:
            rows.append([int(tok) for tok in tokens])
        except ValueError:
            raise MatrixParseError(no, "entries must be decimal integers") from None
    if n == 0:
        return Matrix(((),) * m, rows=0)
    return Matrix.from_rows(rows)


def format_matrix(mat: Matrix) -> str:
    lines = [f"{mat.rows} {mat.cols}"]
    lines.extend(" ".join(str(e) for e in mat.row(i)) for i in range(mat.rows))
    return "\n".join(lines) + "\n"


def load_matrix(path: str | os.PathLike) -> Matrix:
    with open(path, "r", encoding="ascii") as handle:
        return parse_matrix(handle.read())
