"""Classification table CSV ingestion and canonical serialization.

Format: header ``"",type1,type2,...`` then one ``token,v1,v2,...`` row per
token with natural-valued cells ({0,1} cells make a binary classification).
Cells are whitespace-trimmed; ``#``-prefixed lines are comments.  The corner
header cell is a free label and is ignored on input; serialization always
writes ``""`` there.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .classification import Classification
from .errors import ParseError
from .multiclass import MultiClassification

__all__ = [
    "parse_table",
    "load_table",
    "serialize_multiclassification",
    "serialize_classification",
]


def _cells(line: str, lineno: int) -> list[str]:
    try:
        row = next(csv.reader([line]))
    except (csv.Error, StopIteration) as exc:
        raise ParseError(f"malformed CSV: {exc}", lineno) from None
    return [cell.strip() for cell in row]


def parse_table(text: str) -> MultiClassification:
    """Parse CSV text into a multi-classification.

    Binary tables come back with all entries in {0,1}; use
    ``to_classification`` to embed them.
    """
    header: list[str] | None = None
    tokens: list[str] = []
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = _cells(line, lineno)
        if header is None:
            if len(cells) < 2:
                raise ParseError("header must name at least one type", lineno)
            header = cells[1:]
            if len(set(header)) != len(header):
                raise ParseError("duplicate type names in header", lineno)
            if any(not t for t in header):
                raise ParseError("empty type name in header", lineno)
            continue
        if len(cells) != len(header) + 1:
            raise ParseError(
                f"expected {len(header) + 1} cells, got {len(cells)}", lineno)
        token = cells[0]
        if not token:
            raise ParseError("empty token name", lineno)
        if token in tokens:
            raise ParseError(f"duplicate token {token!r}", lineno)
        values = []
        for cell in cells[1:]:
            try:
                v = int(cell)
            except ValueError:
                raise ParseError(f"cell {cell!r} is not an integer", lineno) from None
            if v < 0:
                raise ParseError(f"cell value {v} is negative", lineno)
            values.append(v)
        tokens.append(token)
        rows.append(tuple(values))
    if header is None:
        raise ParseError("no header row found", 1)
    if not tokens:
        raise ParseError("no token rows found", 1)
    return MultiClassification(tuple(tokens), tuple(header), tuple(rows))


def load_table(path: str | Path) -> MultiClassification:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def _check_plain(name: str) -> str:
    if any(ch in name for ch in ',"\n\r') or name != name.strip():
        raise ParseError(f"identifier {name!r} cannot be written unquoted")
    return name


def serialize_multiclassification(mc: MultiClassification) -> str:
    """Canonical CSV text; parsing it back reproduces the value."""
    lines = ['""' + "".join(f",{_check_plain(t)}" for t in mc.types)]
    for token, row in zip(mc.tokens, mc.multiplicity):
        lines.append(_check_plain(token) + "".join(f",{v}" for v in row))
    return "\n".join(lines) + "\n"


def serialize_classification(c: Classification) -> str:
    return serialize_multiclassification(MultiClassification.from_classification(c))
