"""Parsers for dominance matrices, signed rating lists and weighted edge lists.

All readers accept UTF-8 text, sniff comma vs tab delimiters, and skip blank
lines and ``#`` comments. The weighted edge list (``source,target,weight``)
is the interchange format written by :func:`serialize`.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .graph import MultiDigraph

log = logging.getLogger(__name__)

FORMATS = ("dominance_matrix", "signed_edge_list", "weighted_edge_list")
CONVENTIONS = ("column_dominates_row", "row_dominates_column")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.message = message
        self.line, self.column, self.source = line, column, source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class NonSquareMatrixError(ParseError):
    pass


class NonNumericCellError(ParseError):
    pass


class DuplicateLabelError(ParseError):
    pass


class RatingRangeError(ParseError):
    pass


class MalformedRowError(ParseError):
    pass


class NonPositiveWeightRowError(ParseError):
    pass


@dataclass(frozen=True)
class DatasetDescriptor:
    format: str
    path: Path
    direction_convention: str = "column_dominates_row"
    sign_filter: str = "negative_only"

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.direction_convention not in CONVENTIONS:
            raise ValueError(f"unknown direction convention {self.direction_convention!r}")
        if self.sign_filter != "negative_only":
            raise ValueError(f"unknown sign filter {self.sign_filter!r}")

    def load(self) -> MultiDigraph:
        text = Path(self.path).read_text(encoding="utf-8")
        try:
            if self.format == "dominance_matrix":
                return parse_dominance_matrix(text, self.direction_convention)
            if self.format == "signed_edge_list":
                return parse_signed_edge_list(text, self.sign_filter)
            return parse_weighted_edge_list(text)
        except ParseError as exc:
            if exc.source is None:
                raise type(exc)(exc.message, exc.line, exc.column, str(self.path)) from exc
            raise


def _rows(text: str) -> list[tuple[int, list[str]]]:
    """Non-blank, non-comment rows with 1-based line numbers."""
    text = text.lstrip("﻿")
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        return []
    first = lines[0][1]
    delim = "\t" if "\t" in first and "," not in first else ","
    return [(lineno, [c.strip() for c in next(csv.reader([ln], delimiter=delim))]) for lineno, ln in lines]


def _is_int(cell: str) -> bool:
    try:
        int(cell)
    except ValueError:
        return False
    return True


def _number(cell: str, lineno: int, col: int, exc=NonNumericCellError) -> float:
    try:
        val = float(cell)
    except ValueError:
        raise exc(f"non-numeric value {cell!r}", lineno, col) from None
    if not math.isfinite(val):
        raise exc(f"non-finite value {cell!r}", lineno, col)
    return int(val) if val.is_integer() else val


def parse_dominance_matrix(text: str, convention: str = "column_dominates_row") -> MultiDigraph:
    """Square dominance matrix with a header row of labels and a label column.

    With ``column_dominates_row`` an entry k at (row r, column c) records that
    c dominated r k times and yields edge (c, r) of weight k. The header may
    start with a corner cell (empty or a name) or list the labels only.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown direction convention {convention!r}")
    rows = _rows(text)
    if not rows:
        return MultiDigraph(weight_kind="count")
    header_line, header = rows[0]
    body = rows[1:]
    has_corner = header[0] == "" or len(header) == len(body) + 1
    col_labels = header[1:] if has_corner else header
    seen: set[str] = set()
    for j, lab in enumerate(col_labels):
        if lab in seen:
            raise DuplicateLabelError(f"duplicate column label {lab!r}", header_line, j + 1)
        seen.add(lab)
    n = len(col_labels)
    if len(body) != n:
        raise NonSquareMatrixError(f"{len(body)} data rows for {n} column labels", body[-1][0] if body else header_line)

    g = MultiDigraph(col_labels, weight_kind="count")
    row_seen: set[str] = set()
    for r, (lineno, cells) in enumerate(body):
        label, values = cells[0], cells[1:]
        if label in row_seen:
            raise DuplicateLabelError(f"duplicate row label {label!r}", lineno, 0)
        row_seen.add(label)
        if label != col_labels[r]:
            raise ParseError(f"row label {label!r} does not match column label {col_labels[r]!r}", lineno, 0)
        if len(values) != n:
            raise NonSquareMatrixError(f"row has {len(values)} entries, expected {n}", lineno)
        for c, cell in enumerate(values):
            k = _number(cell or "0", lineno, c + 1)
            if k < 0:
                raise NonNumericCellError(f"negative count {cell!r}", lineno, c + 1)
            if k == 0:
                continue
            if r == c:
                log.warning("ignoring diagonal entry %s for %r (line %d)", cell, label, lineno)
                continue
            if convention == "column_dominates_row":
                g.add_edge(c, r, k)
            else:
                g.add_edge(r, c, k)
    return g


def parse_signed_edge_list(text: str, sign_filter: str = "negative_only") -> MultiDigraph:
    """SOURCE,TARGET,RATING[,TIME] rows; negative ratings become edges weighted by |rating|.

    Only users appearing in a negative row become nodes.
    """
    if sign_filter != "negative_only":
        raise ValueError(f"unknown sign filter {sign_filter!r}")
    g = MultiDigraph(weight_kind="volume")
    rows = _rows(text)
    if rows and len(rows[0][1]) > 2 and not _is_int(rows[0][1][2]):
        rows = rows[1:]  # header
    for lineno, cells in rows:
        if len(cells) not in (3, 4) or not cells[0] or not cells[1]:
            raise MalformedRowError(f"expected SOURCE,TARGET,RATING[,TIME], got {len(cells)} fields", lineno)
        src, dst, raw = cells[0], cells[1], cells[2]
        if not _is_int(raw):
            raise MalformedRowError(f"rating {raw!r} is not an integer", lineno, 3)
        rating = int(raw)
        if not -10 <= rating <= 10:
            raise RatingRangeError(f"rating {rating} outside [-10, 10]", lineno, 3)
        if rating >= 0:
            continue
        if src == dst:
            log.warning("ignoring self-rating by %r (line %d)", src, lineno)
            continue
        g.add_edge(src, dst, -rating)
    return g


def parse_weighted_edge_list(text: str) -> MultiDigraph:
    """SOURCE,TARGET,WEIGHT rows with positive weights; repeated pairs accumulate.

    A leading ``source,target,weight`` header is recognised and skipped.
    """
    g = MultiDigraph(weight_kind="volume")
    rows = _rows(text)
    if rows and [c.lower() for c in rows[0][1]] == ["source", "target", "weight"]:
        rows = rows[1:]
    for lineno, cells in rows:
        if len(cells) != 3 or not cells[0] or not cells[1]:
            raise MalformedRowError(f"expected SOURCE,TARGET,WEIGHT, got {len(cells)} fields", lineno)
        w = _number(cells[2], lineno, 3, exc=MalformedRowError)
        if w <= 0:
            raise NonPositiveWeightRowError(f"weight must be > 0, got {cells[2]!r}", lineno, 3)
        if cells[0] == cells[1]:
            raise MalformedRowError(f"self-loop on {cells[0]!r}", lineno)
        g.add_edge(cells[0], cells[1], w)
    return g


def format_weight(w: float) -> str:
    """Integers without a decimal point, other floats at round-trip precision."""
    if float(w).is_integer():
        return str(int(w))
    return repr(float(w))


def serialize(g: MultiDigraph) -> str:
    """Weighted edge list sorted by (source index, target index), header first.

    Isolated nodes are not representable in an edge list and are dropped, and
    re-parsing numbers nodes in first-seen order, so a round trip preserves
    labels, edges and weights but not necessarily node indices.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "weight"])
    for u, v, w in g.edges():
        writer.writerow([g.label_of(u), g.label_of(v), format_weight(w)])
    return buf.getvalue()


EXTENSIONS = {
    ".matrix": "dominance_matrix",
    ".dom": "dominance_matrix",
    ".signed": "signed_edge_list",
    ".edges": "weighted_edge_list",
}


def detect_format(path) -> str:
    """Guess the format from the extension, then from the first rows."""
    path = Path(path)
    for suffix in reversed(path.suffixes):
        if suffix.lower() in EXTENSIONS:
            return EXTENSIONS[suffix.lower()]
    rows = _rows(path.read_text(encoding="utf-8"))
    if not rows:
        return "weighted_edge_list"
    first = rows[0][1]
    if [c.lower() for c in first] == ["source", "target", "weight"]:
        return "weighted_edge_list"
    # matrix: row labels repeat the header labels in order
    labels = first[1:] if len(first) == len(rows) else first
    if first[0] == "" or (len(labels) == len(rows) - 1 and [c[0] for _, c in rows[1:]] == labels):
        return "dominance_matrix"
    if len(first) == 4:
        return "signed_edge_list"
    if any(len(c) > 2 and _is_int(c[2]) and int(c[2]) < 0 for _, c in rows[:1000]):
        return "signed_edge_list"
    return "weighted_edge_list"


def load(path, fmt: str | None = None, convention: str = "column_dominates_row") -> MultiDigraph:
    fmt = fmt or detect_format(path)
    return DatasetDescriptor(fmt, Path(path), direction_convention=convention).load()
