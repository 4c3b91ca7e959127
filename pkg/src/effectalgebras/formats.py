"""Parsing and rendering of sum tables and model files.

Table text format, one statement per line (';' also separates):

    n=5
    e: g - I
    f: - I -
    g: I - -

The first statement fixes the order; each following statement names one
nontrivial element and lists its row.  Cell tokens are '-' for an
undefined sum, 'I' for the unit, or any declared row label.  The JSON
form is {"n": int, "labels": [nontrivial labels], "cells": [[token]]}
with the same token grammar.  Rationals serialize as "p/q" strings.

Model files are JSON: {"kind": "multiplicative" | "fuzzy" | "quantum",
"assignment": {label: value}} plus an optional "weak": true for fuzzy
models.  Multiplicative entries are {"re", "im", "omega"} rational
triples (bare rationals allowed); quantum entries are row-major matrices
of floats or {"re", "im"} pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ONE, UNDEFINED, SumTable
from .models import Cyc, FuzzyAssignment, MultiplicativeModel

UNDEFINED_TOKEN = "-"
UNIT_TOKEN = "I"
_RESERVED = {UNDEFINED_TOKEN, UNIT_TOKEN, "0", "1"}


class ParseError(ValueError):
    """Input text does not conform; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(f"{message}{where}")


def _statements(text: str):
    """(line, column, statement) triples, ';' treated as a separator."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 1
        for piece in line.split(";"):
            stmt = piece.strip()
            if stmt:
                yield lineno, col + piece.index(stmt[0]), stmt
            col += len(piece) + 1


def parse_table(text: str) -> SumTable:
    """Parse the text format into a table; raises ParseError with the
    offending position on bad tokens, bad row lengths, or duplicates."""
    stmts = list(_statements(text))
    if not stmts:
        raise ParseError("empty document")
    line, col, head = stmts[0]
    if not head.replace(" ", "").startswith("n="):
        raise ParseError("first statement must be n=<order>", line, col)
    try:
        n = int(head.split("=", 1)[1])
    except ValueError:
        raise ParseError("order must be an integer", line, col) from None
    if n < 2:
        raise ParseError("order must be at least 2", line, col)
    rows = stmts[1:]
    if len(rows) != n - 2:
        raise ParseError(f"expected {n - 2} row statements, found {len(rows)}", line, col)
    labels: list[str] = []
    bodies: list[tuple[int, int, list[str]]] = []
    for lineno, column, stmt in rows:
        if ":" not in stmt:
            raise ParseError("row must look like 'label: cells'", lineno, column)
        label, body = stmt.split(":", 1)
        label = label.strip()
        if not label or " " in label:
            raise ParseError("row label must be one word", lineno, column)
        if label in _RESERVED:
            raise ParseError(f"label {label!r} is reserved", lineno, column)
        if label in labels:
            raise ParseError(f"duplicate label {label!r}", lineno, column)
        labels.append(label)
        bodies.append((lineno, column + len(stmt) - len(body), body.split()))
    index = {lab: i + 2 for i, lab in enumerate(labels)}
    grid = []
    for (lineno, column, tokens), label in zip(bodies, labels):
        if len(tokens) != n - 2:
            raise ParseError(
                f"row {label!r} has {len(tokens)} cells, expected {n - 2}",
                lineno, column)
        row = []
        for tok in tokens:
            if tok == UNDEFINED_TOKEN:
                row.append(UNDEFINED)
            elif tok == UNIT_TOKEN:
                row.append(ONE)
            elif tok in index:
                row.append(index[tok])
            else:
                raise ParseError(f"unknown cell token {tok!r}", lineno, column)
        grid.append(tuple(row))
    return SumTable(n, tuple(grid), ("0", "1", *labels))


def _token(table: SumTable, v: int) -> str:
    if v == UNDEFINED:
        return UNDEFINED_TOKEN
    if v == ONE:
        return UNIT_TOKEN
    return table.labels[v]


def render_table(table: SumTable, fmt: str = "ascii") -> str:
    """Render to 'ascii', 'latex', or 'json'; parse(render(t)) == t."""
    if fmt == "ascii":
        return _render_ascii(table)
    if fmt == "latex":
        return _render_latex(table)
    if fmt == "json":
        return json.dumps(table_to_json(table), indent=2) + "\n"
    raise ValueError(f"unknown format: {fmt}")


def _render_ascii(table: SumTable) -> str:
    lines = [f"n={table.n}"]
    width = max((len(lab) for lab in table.labels[2:]), default=1)
    for e in table.nontrivial():
        cells = " ".join(
            _token(table, table.cell(e, f)).ljust(width if f < table.n - 1 else 0)
            for f in table.nontrivial()
        ).rstrip()
        lines.append(f"{table.labels[e]}: {cells}")
    return "\n".join(lines) + "\n"


def _render_latex(table: SumTable) -> str:
    """A standalone tabular in the usual sum-table layout; needs only
    amssymb in the preamble for \\mathfrak and \\diamond."""
    m = table.n - 2
    cols = "|c|" + "c|" * m
    lines = [f"\\begin{{tabular}}{{{cols}}}", "\\hline"]
    head = " & ".join(["$\\oplus$"] + [f"${table.labels[f]}$" for f in table.nontrivial()])
    lines.append(head + " \\\\")
    lines.append("\\hline")
    for e in table.nontrivial():
        row = [f"${table.labels[e]}$"]
        for f in table.nontrivial():
            v = table.cell(e, f)
            if v == UNDEFINED:
                row.append("$\\diamond$")
            elif v == ONE:
                row.append("$\\mathfrak{1}$")
            else:
                row.append(f"${table.labels[v]}$")
        lines.append(" & ".join(row) + " \\\\")
        lines.append("\\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def table_to_json(table: SumTable) -> dict:
    return {
        "n": table.n,
        "labels": list(table.labels[2:]),
        "cells": [
            [_token(table, table.cell(e, f)) for f in table.nontrivial()]
            for e in table.nontrivial()
        ],
    }


def table_from_json(doc: dict | str) -> SumTable:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        n = int(doc["n"])
        labels = [str(x) for x in doc["labels"]]
        cells = doc["cells"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad table document: {exc}") from None
    if n < 2 or len(labels) != n - 2 or len(set(labels)) != len(labels):
        raise ParseError("labels must be distinct and match the order")
    if set(labels) & _RESERVED:
        raise ParseError("labels must avoid the reserved tokens")
    index = {lab: i + 2 for i, lab in enumerate(labels)}
    if len(cells) != n - 2:
        raise ParseError(f"expected {n - 2} rows")
    grid = []
    for i, row in enumerate(cells):
        if len(row) != n - 2:
            raise ParseError(f"row {i} has {len(row)} cells, expected {n - 2}", i + 1)
        out = []
        for tok in row:
            if tok == UNDEFINED_TOKEN:
                out.append(UNDEFINED)
            elif tok == UNIT_TOKEN:
                out.append(ONE)
            elif tok in index:
                out.append(index[tok])
            else:
                raise ParseError(f"unknown cell token {tok!r}", i + 1)
        grid.append(tuple(out))
    return SumTable(n, tuple(grid), ("0", "1", *labels))


def parse_any_table(text: str) -> SumTable:
    """Accept either the text format or the JSON document."""
    if text.lstrip().startswith("{"):
        return table_from_json(text)
    return parse_table(text)


def _frac(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("rationals must be numbers or 'p/q' strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {value!r}") from None
    raise ParseError(f"bad rational {value!r}")


def _frac_str(q: Fraction) -> str:
    return str(q)


def _cyc_from_json(value) -> Cyc:
    if isinstance(value, dict):
        extra = set(value) - {"re", "im", "omega"}
        if extra:
            raise ParseError(f"unknown complex fields {sorted(extra)}")
        return Cyc.from_parts(
            _frac(value.get("re", 0)),
            _frac(value.get("im", 0)),
            _frac(value.get("omega", 0)),
        )
    return Cyc.rational(_frac(value))


def _cyc_to_json(z: Cyc):
    c0, c1, c2, c3 = z.c
    if c1 != 0:
        raise ValueError("value is outside the re/im/omega encoding")
    re, im, om = c0 + c2, c3, c2
    if im == 0 and om == 0:
        return _frac_str(re)
    out = {}
    if re:
        out["re"] = _frac_str(re)
    if im:
        out["im"] = _frac_str(im)
    if om:
        out["omega"] = _frac_str(om)
    return out or {"re": "0"}


@dataclass(frozen=True)
class ModelDocument:
    """One parsed model file, ready for the matching verifier."""

    kind: str
    multiplicative: MultiplicativeModel | None = None
    fuzzy: FuzzyAssignment | None = None
    weak: bool = False
    matrices: dict[int, np.ndarray] | None = None


def model_from_json(doc: dict | str, table: SumTable) -> ModelDocument:
    """Parse a model file against a table (labels resolve element ids)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    kind = doc.get("kind")
    if kind not in ("multiplicative", "fuzzy", "quantum"):
        raise ParseError(f"unknown model kind {kind!r}")
    raw = doc.get("assignment")
    if not isinstance(raw, dict):
        raise ParseError("assignment must map labels to values")
    label_ids = {lab: e for e, lab in enumerate(table.labels)}
    label_ids.setdefault("0", 0)
    label_ids.setdefault("1", 1)
    assignment: dict[int, object] = {}
    for lab, value in raw.items():
        if lab not in label_ids:
            raise ParseError(f"unknown element label {lab!r}")
        assignment[label_ids[lab]] = value
    if sorted(assignment) != list(range(table.n)):
        raise ParseError("assignment must cover every element exactly once")
    if kind == "multiplicative":
        vectors = {}
        for e, value in assignment.items():
            entries = value if isinstance(value, list) else [value]
            vectors[e] = tuple(_cyc_from_json(v) for v in entries)
        return ModelDocument("multiplicative",
                             multiplicative=MultiplicativeModel(vectors))
    if kind == "fuzzy":
        vectors = {}
        for e, value in assignment.items():
            entries = value if isinstance(value, list) else [value]
            vectors[e] = tuple(_frac(v) for v in entries)
        return ModelDocument("fuzzy", fuzzy=FuzzyAssignment(vectors),
                             weak=bool(doc.get("weak", False)))
    mats = {}
    for e, value in assignment.items():
        if not isinstance(value, list):
            raise ParseError("matrices must be arrays of rows")
        rows = []
        for row in value:
            if not isinstance(row, list):
                raise ParseError("matrices must be arrays of rows")
            rows.append([
                complex(c["re"], c.get("im", 0)) if isinstance(c, dict) else complex(c)
                for c in row
            ])
        mats[e] = np.array(rows, dtype=complex)
    return ModelDocument("quantum", matrices=mats)


def model_to_json(doc: ModelDocument, table: SumTable) -> dict:
    labels = table.labels
    if doc.kind == "multiplicative":
        assert doc.multiplicative is not None
        body = {
            labels[e]: [_cyc_to_json(z) for z in vec]
            for e, vec in sorted(doc.multiplicative.assignment.items())
        }
        return {"kind": "multiplicative", "assignment": body}
    if doc.kind == "fuzzy":
        assert doc.fuzzy is not None
        body = {
            labels[e]: [_frac_str(c) for c in vec]
            for e, vec in sorted(doc.fuzzy.assignment.items())
        }
        out = {"kind": "fuzzy", "assignment": body}
        if doc.weak:
            out["weak"] = True
        return out
    assert doc.matrices is not None
    body = {}
    for e, mat in sorted(doc.matrices.items()):
        rows = []
        for row in np.asarray(mat):
            rows.append([
                float(c.real) if abs(c.imag) == 0 else {"re": float(c.real), "im": float(c.imag)}
                for c in row
            ])
        body[labels[e]] = rows
    return {"kind": "quantum", "assignment": body}
