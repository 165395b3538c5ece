"""Readers and writers for the supported text formats.

Three formats are exchanged: network files with explicit vertex and arc
sections, citation-matrix CSV mirroring the usual table layout (rows cited,
columns citing), and flat CSVs for iteration traces and external per-journal
metrics.  Parsers reject malformed input with a positioned error instead of
guessing; writers emit deterministic LF-terminated UTF-8 so identical data
produces identical bytes.

Arc orientation in network files follows the cited-to-citing convention:
an arc line ``src dst w`` adds w citations to ``Z[src-1][dst-1]``, i.e. src
is the cited journal and dst the citing one.  This is the transpose of the
common social-network reading and is applied symmetrically by the writer, so
round-trips are lossless.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .comparators import MetricVector
from .engine import PwrTrace
from .matrix import CitationMatrix, nonzero_entries

log = logging.getLogger(__name__)

_QUOTED_VERTEX = re.compile(r'^(\d+)\s+"([^"]*)"$')
_BARE_VERTEX = re.compile(r"^(\d+)\s+(\S+)$")

TRACE_HEADER = ("label", "k", "power", "weakness", "ratio")
METRIC_HEADER = ("label", "value")


class ParseError(ValueError):
    """Malformed input; the message carries the offending position."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


def read_pajek(text: str) -> CitationMatrix:
    """Parse a network file with ``*Vertices`` and ``*Arcs`` sections."""
    lines = text.lstrip("﻿").splitlines()
    pos = 0

    def next_content() -> tuple[int, str] | None:
        nonlocal pos
        while pos < len(lines):
            stripped = lines[pos].strip()
            pos += 1
            if stripped and not stripped.startswith("%"):
                return pos, stripped
        return None

    first = next_content()
    if first is None:
        raise ParseError("empty input; expected a *Vertices section")
    line_no, content = first
    tokens = content.split()
    if tokens[0].lower() != "*vertices" or len(tokens) != 2:
        raise ParseError(f"expected '*Vertices n', got {content!r}", line_no)
    try:
        n = int(tokens[1])
    except ValueError:
        raise ParseError(f"vertex count is not an integer: {tokens[1]!r}", line_no) from None
    if n < 0:
        raise ParseError(f"vertex count must be >= 0, got {n}", line_no)

    labels: list[str | None] = [None] * n
    arcs_line: tuple[int, str] | None = None
    while True:
        item = next_content()
        if item is None:
            break
        line_no, content = item
        if content.startswith("*"):
            arcs_line = (line_no, content)
            break
        match = _QUOTED_VERTEX.match(content) or _BARE_VERTEX.match(content)
        if match is None:
            raise ParseError(f"malformed vertex line: {content!r}", line_no)
        vid = int(match.group(1))
        name = match.group(2)
        if not 1 <= vid <= n:
            raise ParseError(f"vertex id {vid} outside 1..{n}", line_no)
        if labels[vid - 1] is not None:
            raise ParseError(f"duplicate vertex id {vid}", line_no)
        if not name:
            raise ParseError(f"vertex {vid} has an empty label", line_no)
        labels[vid - 1] = name
    missing = [i + 1 for i, name in enumerate(labels) if name is None]
    if missing:
        raise ParseError(f"vertex ids without a definition: {missing}")

    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    if arcs_line is not None:
        line_no, content = arcs_line
        section = content.split()[0].lower()
        if section != "*arcs":
            raise ParseError(f"unsupported section {content.split()[0]!r}", line_no)
        while True:
            item = next_content()
            if item is None:
                break
            line_no, content = item
            if content.startswith("*"):
                raise ParseError(f"unsupported section {content.split()[0]!r}", line_no)
            tokens = content.split()
            if len(tokens) != 3:
                raise ParseError(f"expected 'src dst weight', got {content!r}", line_no)
            try:
                src, dst = int(tokens[0]), int(tokens[1])
                weight = float(tokens[2])
            except ValueError:
                raise ParseError(f"malformed arc line: {content!r}", line_no) from None
            if not (1 <= src <= n and 1 <= dst <= n):
                raise ParseError(f"arc endpoint outside 1..{n}: {content!r}", line_no)
            if not math.isfinite(weight) or weight < 0.0:
                raise ParseError(f"arc weight must be finite and >= 0: {content!r}", line_no)
            rows.append(src - 1)
            cols.append(dst - 1)
            data.append(weight)
    else:
        log.warning("network file has no *Arcs section; matrix is all zeros")

    entries = sparse.coo_array(
        (np.asarray(data), (np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))),
        shape=(n, n),
    ).tocsr()
    try:
        return CitationMatrix(tuple(labels), entries)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_pajek(z: CitationMatrix) -> str:
    """Emit vertices in label order and one arc line per nonzero entry."""
    out = [f"*Vertices {z.n}"]
    for i, name in enumerate(z.labels, start=1):
        out.append(f'{i} "{name}"')
    out.append("*Arcs")
    for i, j, weight in nonzero_entries(z):
        out.append(f"{i + 1} {j + 1} {_format_number(weight)}")
    return "\n".join(out) + "\n"


def _csv_rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text.lstrip("﻿"))))


def read_csv_matrix(text: str) -> CitationMatrix:
    """Parse a matrix CSV: header of citing labels, one row per cited label.

    The leading header cell must be empty and row labels must repeat the
    header labels in the same order.
    """
    rows = _csv_rows(text)
    if not rows:
        raise ParseError("empty input; expected a header row")
    header = rows[0]
    if not header or header[0] != "":
        raise ParseError("header must start with an empty cell", line=1)
    citing = header[1:]
    n = len(citing)
    data_rows = rows[1:]
    if len(data_rows) != n:
        raise ParseError(f"expected {n} data rows to match the header, got {len(data_rows)}")
    cited: list[str] = []
    values = np.zeros((n, n), dtype=np.float64)
    for r, row in enumerate(data_rows, start=2):
        if len(row) != n + 1:
            raise ParseError(f"expected {n + 1} cells, got {len(row)}", line=r)
        cited.append(row[0])
        for c, cell in enumerate(row[1:], start=2):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f"column {c}: not a number: {cell!r}", line=r) from None
            if not math.isfinite(value) or value < 0.0:
                raise ParseError(
                    f"column {c}: weights must be finite and >= 0, got {cell!r}", line=r
                )
            values[r - 2, c - 2] = value
    if cited != citing:
        mismatch = next(i for i, (a, b) in enumerate(zip(cited, citing)) if a != b)
        raise ParseError(
            f"row labels must match header labels in order; "
            f"position {mismatch}: {cited[mismatch]!r} vs {citing[mismatch]!r}"
        )
    try:
        return CitationMatrix(tuple(citing), values)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_csv_matrix(z: CitationMatrix) -> str:
    """Inverse of :func:`read_csv_matrix`; integer weights stay integers."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + list(z.labels))
    dense = z.to_dense()
    for i, name in enumerate(z.labels):
        writer.writerow([name] + [_format_number(v) for v in dense[i]])
    return buffer.getvalue()


@dataclass(frozen=True)
class TraceRow:
    label: str
    k: int
    power: float
    weakness: float
    ratio: float


@dataclass(frozen=True)
class TraceTable:
    """Flat (label, k) table of power, weakness, and ratio values."""

    labels: tuple[str, ...]
    rows: tuple[TraceRow, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        per_label: dict[str, list[int]] = {name: [] for name in self.labels}
        for row in self.rows:
            if row.label not in per_label:
                raise ValueError(f"trace row for unknown label {row.label!r}")
            per_label[row.label].append(row.k)
        k_sets = {tuple(sorted(ks)) for ks in per_label.values()}
        if len(k_sets) != 1:
            raise ValueError("every label must cover the same iterations")
        ks = k_sets.pop()
        if ks != tuple(range(1, len(ks) + 1)):
            raise ValueError("iterations must be contiguous from k=1")

    @property
    def k_max(self) -> int:
        return len(self.rows) // max(len(self.labels), 1)

    @classmethod
    def from_trace(cls, trace: PwrTrace) -> TraceTable:
        rows = []
        for idx, name in enumerate(trace.labels):
            for k in range(1, trace.k_max + 1):
                rows.append(
                    TraceRow(
                        label=name,
                        k=k,
                        power=float(trace.power_at(k)[idx]),
                        weakness=float(trace.weakness_at(k)[idx]),
                        ratio=float(trace.ratio_at(k)[idx]),
                    )
                )
        return cls(trace.labels, tuple(rows))

    def series(self, label: str, column: str = "ratio") -> list[float]:
        picked = [row for row in self.rows if row.label == label]
        if not picked:
            raise KeyError(f"unknown label: {label!r}")
        picked.sort(key=lambda row: row.k)
        return [getattr(row, column) for row in picked]


def write_trace_csv(trace: PwrTrace | TraceTable) -> str:
    """Serialize a trace, label-major then k ascending, at full precision."""
    table = TraceTable.from_trace(trace) if isinstance(trace, PwrTrace) else trace
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    ordered = sorted(table.rows, key=lambda row: (table.labels.index(row.label), row.k))
    for row in ordered:
        writer.writerow([row.label, row.k, repr(row.power), repr(row.weakness), repr(row.ratio)])
    return buffer.getvalue()


def read_trace_csv(text: str) -> TraceTable:
    rows = _csv_rows(text)
    if not rows or tuple(rows[0]) != TRACE_HEADER:
        raise ParseError(f"expected header {','.join(TRACE_HEADER)!r}", line=1)
    parsed: list[TraceRow] = []
    labels: list[str] = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != 5:
            raise ParseError(f"expected 5 cells, got {len(row)}", line=r)
        try:
            parsed.append(
                TraceRow(row[0], int(row[1]), float(row[2]), float(row[3]), float(row[4]))
            )
        except ValueError:
            raise ParseError(f"malformed trace row: {row!r}", line=r) from None
        if row[0] not in labels:
            labels.append(row[0])
    try:
        return TraceTable(tuple(labels), tuple(parsed))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_metric_csv(text: str, name: str = "external") -> MetricVector:
    """Parse a two-column ``label,value`` CSV with a header row."""
    rows = _csv_rows(text)
    if not rows or len(rows[0]) != 2:
        raise ParseError("expected a two-column header row", line=1)
    labels: list[str] = []
    values: list[float] = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ParseError(f"expected 2 cells, got {len(row)}", line=r)
        if not row[0]:
            raise ParseError("empty label", line=r)
        if row[0] in labels:
            raise ParseError(f"duplicate label {row[0]!r}", line=r)
        try:
            values.append(float(row[1]))
        except ValueError:
            raise ParseError(f"not a number: {row[1]!r}", line=r) from None
        labels.append(row[0])
    try:
        return MetricVector(name, tuple(labels), np.asarray(values, dtype=np.float64))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_metric_csv(metric: MetricVector) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(METRIC_HEADER)
    for name, value in zip(metric.labels, metric.values):
        writer.writerow([name, repr(float(value))])
    return buffer.getvalue()
