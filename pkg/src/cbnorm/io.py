"""File formats: JSON matrix files and benchmark table rows (CSV/JSON).

The matrix file is a JSON document with explicit [re, im] pairs in row-major
order, so finite doubles round-trip bit-exactly and files stay diffable:

    {"rows": 2, "cols": 2, "entries": [[1.0, 0.0], [0.0, -0.5], ...]}
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import asdict, dataclass

import numpy as np

__all__ = [
    "MatrixFileError",
    "serialize_matrix",
    "parse_matrix",
    "save_matrix",
    "load_matrix",
    "TableRow",
    "TABLE_CSV_HEADER",
    "rows_to_csv",
    "rows_to_json",
]

TABLE_CSV_HEADER = "n,m,value,value_hermitian,starts,tol,seed,wall_time_ms"


class MatrixFileError(ValueError):
    """Raised when a matrix file is malformed; the message names the first
    offending token."""


def serialize_matrix(m) -> str:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    entries = [[float(z.real), float(z.imag)] for z in a.reshape(-1)]
    return json.dumps(
        {"rows": a.shape[0], "cols": a.shape[1], "entries": entries}, allow_nan=False
    )


def parse_matrix(text: str) -> np.ndarray:
    try:
        doc = json.loads(
            text,
            parse_constant=lambda tok: (_ for _ in ()).throw(
                MatrixFileError(f"non-finite token {tok!r} is not allowed")
            ),
        )
    except MatrixFileError:
        raise
    except json.JSONDecodeError as e:
        snippet = text[e.pos : e.pos + 20].split("\n")[0] or "<end of file>"
        raise MatrixFileError(f"{e.msg} at position {e.pos}, near {snippet!r}") from None
    if not isinstance(doc, dict):
        raise MatrixFileError(f"top-level value must be an object, got {type(doc).__name__}")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise MatrixFileError(f"missing required key {key!r}")
    rows, cols = doc["rows"], doc["cols"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise MatrixFileError(f"rows/cols must be positive integers, got {rows!r}, {cols!r}")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != rows * cols:
        count = len(entries) if isinstance(entries, list) else entries
        raise MatrixFileError(f"expected {rows * cols} entries, got {count!r}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, item in enumerate(entries):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in item)
        ):
            raise MatrixFileError(f"bad entry at index {i}: {item!r} (want [re, im])")
        out[i] = complex(item[0], item[1])
    if not (np.all(np.isfinite(out.real)) and np.all(np.isfinite(out.imag))):
        raise MatrixFileError("entries contain non-finite values")
    return out.reshape(rows, cols)


def save_matrix(path, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(m))
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


@dataclass
class TableRow:
    """One benchmark row: lower bounds for a single ancilla dimension."""

    n: int
    m: int
    value: float
    value_hermitian: float
    starts: int
    tol: float
    seed: int
    wall_time_ms: int


def rows_to_csv(rows: list[TableRow]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [r.n, r.m, repr(r.value), repr(r.value_hermitian), r.starts, repr(r.tol), r.seed,
             r.wall_time_ms]
        )
    return buf.getvalue()


def rows_to_json(rows: list[TableRow]) -> str:
    return json.dumps({"rows": [asdict(r) for r in rows]}, indent=2, allow_nan=False) + "\n"
