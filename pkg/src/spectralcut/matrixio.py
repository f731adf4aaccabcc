"""Plain-text matrix files and run reports.

Matrix file format (UTF-8, ``#`` starts a comment, blank lines ignored)::

    <kind> <rows> <cols> [dense|coo]
    <body>

``kind`` is one of ``unipartite``, ``bipartite``, ``directed`` or ``dense``.
The layout defaults to ``dense`` for kind ``dense`` and ``coo`` otherwise.
A dense body has exactly ``rows`` lines of ``cols`` numbers. A coo body has
lines ``i j value`` with 0-based indices; absent entries are zero and a
repeated ``(i, j)`` is an error. Graph kinds must be nonnegative, square
for unipartite/directed, and symmetric for unipartite (coo files may list a
single triangle when symmetric completion is requested). Numbers are
written with 17 significant digits so a write/parse round trip is exact.
"""
from __future__ import annotations

import io as _io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from .errors import DuplicateCoordinate, NegativeEntry, ParseError, SymmetryViolation
from .linalg import is_symmetric

KINDS = ("unipartite", "bipartite", "directed", "dense")
LAYOUTS = ("dense", "coo")


@dataclass(frozen=True)
class MatrixFile:
    kind: str
    rows: int
    cols: int
    layout: str


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _number(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", lineno) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", lineno)
    return value


def _index(token: str, bound: int, what: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{what} index {token!r} is not an integer", lineno) from None
    if not 0 <= value < bound:
        raise ParseError(f"{what} index {value} out of bounds [0, {bound})", lineno)
    return value


def parse_header(tokens: list[str], lineno: int) -> MatrixFile:
    if len(tokens) not in (3, 4):
        raise ParseError("header must be '<kind> <rows> <cols> [dense|coo]'", lineno)
    kind = tokens[0].lower()
    if kind not in KINDS:
        raise ParseError(f"unknown kind {tokens[0]!r}; expected one of {', '.join(KINDS)}", lineno)
    try:
        rows, cols = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ParseError("rows and cols must be integers", lineno) from None
    if rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive", lineno)
    layout = tokens[3].lower() if len(tokens) == 4 else ("dense" if kind == "dense" else "coo")
    if layout not in LAYOUTS:
        raise ParseError(f"unknown layout {tokens[3]!r}", lineno)
    if kind in ("unipartite", "directed") and rows != cols:
        raise ParseError(f"{kind} matrix must be square, got {rows}x{cols}", lineno)
    return MatrixFile(kind, rows, cols, layout)


def parse_matrix_text(text: str, symmetric_completion: bool = False) -> tuple[MatrixFile, np.ndarray]:
    lines = iter(_content_lines(text))
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty file: missing header") from None
    meta = parse_header(tokens, lineno)
    m = np.zeros((meta.rows, meta.cols))
    if meta.layout == "dense":
        count = 0
        for lineno, tokens in lines:
            if count == meta.rows:
                raise ParseError(f"more than {meta.rows} data rows", lineno)
            if len(tokens) != meta.cols:
                raise ParseError(f"expected {meta.cols} values, got {len(tokens)}", lineno)
            m[count] = [_number(t, lineno) for t in tokens]
            count += 1
        if count != meta.rows:
            raise ParseError(f"expected {meta.rows} data rows, got {count}")
        if meta.kind == "unipartite" and not is_symmetric(m):
            raise SymmetryViolation("unipartite matrix is not symmetric")
    else:
        seen: dict[tuple[int, int], int] = {}
        complete = symmetric_completion and meta.kind == "unipartite"
        for lineno, tokens in lines:
            if len(tokens) != 3:
                raise ParseError("coordinate entries must be 'i j value'", lineno)
            i = _index(tokens[0], meta.rows, "row", lineno)
            j = _index(tokens[1], meta.cols, "column", lineno)
            value = _number(tokens[2], lineno)
            if (i, j) in seen:
                raise DuplicateCoordinate(f"line {lineno}: ({i}, {j}) already set on line {seen[i, j]}")
            seen[i, j] = lineno
            if complete and (j, i) in seen and i != j and m[j, i] != value:
                raise SymmetryViolation(f"line {lineno}: ({i}, {j}) = {value!r} contradicts ({j}, {i}) = {m[j, i]!r}")
            m[i, j] = value
            if complete:
                m[j, i] = value
        if meta.kind == "unipartite" and not is_symmetric(m):
            raise SymmetryViolation("unipartite matrix is not symmetric (use symmetric completion for one triangle)")
    if meta.kind != "dense" and np.any(m < 0):
        i, j = np.argwhere(m < 0)[0]
        raise NegativeEntry(f"negative entry {m[i, j]!r} at ({i}, {j}) in a {meta.kind} matrix")
    return meta, m


def parse_matrix(path, symmetric_completion: bool = False) -> tuple[MatrixFile, np.ndarray]:
    """Read and validate a matrix file; errors carry 1-based line numbers where applicable."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_matrix_text(text, symmetric_completion)


def format_number(x: float) -> str:
    return format(float(x), ".17g")


def write_matrix(dest, matrix, kind: str = "dense", layout: str = "dense") -> None:
    """Write ``matrix`` to a path or text stream in the format :func:`parse_matrix` reads."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if kind not in KINDS or layout not in LAYOUTS:
        raise ValueError(f"bad kind/layout {kind!r}/{layout!r}")
    buf = _io.StringIO()
    rows, cols = matrix.shape
    buf.write(f"{kind} {rows} {cols} {layout}\n")
    if layout == "dense":
        for row in matrix:
            buf.write(" ".join(format_number(x) for x in row) + "\n")
    else:
        # keep -0.0 so the round trip stays bit-exact
        for i, j in zip(*np.nonzero((matrix != 0) | np.signbit(matrix))):
            buf.write(f"{i} {j} {format_number(matrix[i, j])}\n")
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(buf.getvalue(), encoding="utf-8")
    else:
        dest.write(buf.getvalue())


def parse_vector(path) -> np.ndarray:
    """Whitespace-separated numbers (``#`` comments allowed), e.g. a custom weight file."""
    values = []
    for lineno, tokens in _content_lines(Path(path).read_text(encoding="utf-8")):
        values.extend(_number(t, lineno) for t in tokens)
    if not values:
        raise ParseError("weight file has no values")
    return np.array(values)


@dataclass(frozen=True)
class RunReport:
    assignments: list[int]
    k: int
    kind: str
    objective: str
    relaxed_value: float
    discrete_value: float
    values: list[float]
    row_split: int | None
    seed: int
    timings_ms: dict[str, float] | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    def to_tsv(self) -> str:
        out = _io.StringIO()
        out.write(f"# kind\t{self.kind}\n")
        out.write(f"# objective\t{self.objective}\n")
        out.write(f"# k\t{self.k}\n")
        out.write(f"# seed\t{self.seed}\n")
        out.write(f"# relaxed_value\t{format_number(self.relaxed_value)}\n")
        out.write(f"# discrete_value\t{format_number(self.discrete_value)}\n")
        out.write("# values\t" + ",".join(format_number(v) for v in self.values) + "\n")
        if self.row_split is not None:
            out.write(f"# row_split\t{self.row_split}\n")
        if self.timings_ms is not None:
            for stage, ms in sorted(self.timings_ms.items()):
                out.write(f"# time_ms.{stage}\t{ms:.3f}\n")
        split = self.row_split
        out.write("vertex\tcluster" + ("\tside" if split is not None else "") + "\n")
        for v, c in enumerate(self.assignments):
            if split is None:
                out.write(f"{v}\t{c}\n")
            else:
                out.write(f"{v}\t{c}\t{'feature' if v < split else 'item'}\n")
        return out.getvalue()

    def write(self, stream: TextIO, fmt: str = "json") -> None:
        stream.write(self.to_json() if fmt == "json" else self.to_tsv())
