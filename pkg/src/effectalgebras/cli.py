"""Command-line interface.

Exit codes: 0 success, 2 table fails validation, 3 tables not isomorphic,
64 usage errors, 66 unreadable or unparsable input files.  Results go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import catalog, formats, models
from .classify import classify as classify_algebra
from .compose import compose as compose_pair, is_composite
from .states import analyze, min_fuzzy_dimension, state_space
from .core import InvalidTableError, SumTable, validate, violations
from .enumeration import are_isomorphic, canonical_form, enumerate_algebras

EX_OK = 0
EX_INVALID = 2
EX_NOT_ISO = 3
EX_USAGE = 64
EX_NOINPUT = 66


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise _Exit(EX_NOINPUT) from None


def _load_table(path: str) -> SumTable:
    text = _read(path)
    try:
        return formats.parse_any_table(text)
    except formats.ParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        raise _Exit(EX_NOINPUT) from None


def _load_algebra(path: str):
    table = _load_table(path)
    try:
        return validate(table)
    except InvalidTableError as exc:
        for v in exc.violations:
            print(str(v), file=sys.stderr)
        raise _Exit(EX_INVALID) from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _cmd_enumerate(args) -> int:
    result = enumerate_algebras(args.n, jobs=args.jobs)
    if args.count_only:
        print(result.count)
        return EX_OK
    if args.format == "json":
        doc = {
            "n": result.n,
            "count": result.count,
            "algebras": [formats.table_to_json(a.table) for a in result.algebras],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"# {result.count} effect algebras of order {result.n}")
        for i, a in enumerate(result.algebras, start=1):
            print(f"# {i}")
            sys.stdout.write(formats.render_table(a.table))
            print()
    return EX_OK


def _cmd_validate(args) -> int:
    table = _load_table(args.file)
    found = violations(table)
    if not found:
        print("valid")
        return EX_OK
    for v in found:
        names = ",".join(table.labels[w] if 0 <= w < table.n else str(w) for w in v.witness)
        print(f"{v.kind.value} [{names}]: {v.message}")
    return EX_INVALID


def _classification_doc(algebra) -> dict:
    cls = classify_algebra(algebra)
    cls = dataclasses.replace(
        cls, is_composite=is_composite(algebra) is not None
        if algebra.n <= 16 else None)
    analysis = analyze(algebra)
    doc = _jsonable(cls)
    doc["labels"] = list(algebra.labels[2:])
    doc["state_space"] = {
        "dimension": analysis.polytope.dimension,
        "vertex_count": len(analysis.polytope.vertices),
        "vertices": [
            [str(v[e]) for e in algebra.elements()] for v in analysis.polytope.vertices
        ],
    }
    doc["is_separating"] = analysis.is_separating
    doc["is_order_determining"] = analysis.is_order_determining
    doc["is_quantum"] = analysis.is_quantum
    doc["min_fuzzy_dimension"] = analysis.min_fuzzy_dimension
    return doc


def _cmd_classify(args) -> int:
    if args.name:
        try:
            algebra = catalog.entry(args.name).algebra
        except KeyError:
            print(f"unknown catalog name: {args.name}", file=sys.stderr)
            raise _Exit(EX_NOINPUT) from None
    else:
        algebra = _load_algebra(args.file)
    doc = _classification_doc(algebra)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        skip = {"state_space", "labels"}
        for key, value in doc.items():
            if key not in skip:
                print(f"{key} = {json.dumps(value)}")
        print(f"state_dimension = {doc['state_space']['dimension']}")
        print(f"state_vertices = {doc['state_space']['vertex_count']}")
    return EX_OK


def _cmd_states(args) -> int:
    algebra = _load_algebra(args.file)
    polytope = state_space(algebra)
    print(f"dimension {polytope.dimension}")
    print(f"vertices {len(polytope.vertices)}")
    if args.vertices:
        head = " ".join(algebra.labels)
        print(head)
        for v in polytope.vertices:
            print(" ".join(str(v[e]) for e in algebra.elements()))
    if args.min_fuzzy_dim:
        print(f"min-fuzzy-dimension {min_fuzzy_dimension(algebra, polytope)}")
    return EX_OK


def _cmd_canon(args) -> int:
    table = _load_table(args.file)
    canon = canonical_form(table).table
    sys.stdout.write(formats.render_table(canon, args.format))
    return EX_OK


def _cmd_iso(args) -> int:
    a = _load_table(args.file1)
    b = _load_table(args.file2)
    if are_isomorphic(a, b):
        print("isomorphic")
        return EX_OK
    print("not isomorphic")
    return EX_NOT_ISO


def _cmd_compose(args) -> int:
    a = _load_algebra(args.file1)
    b = _load_algebra(args.file2)
    composite = compose_pair(a, b)
    fmt = args.format
    text = formats.render_table(composite.algebra.table, fmt)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.output}: {exc}", file=sys.stderr)
            raise _Exit(EX_NOINPUT) from None
    else:
        sys.stdout.write(text)
    return EX_OK


def _cmd_factor(args) -> int:
    algebra = _load_algebra(args.file)
    found = is_composite(algebra)
    if found is None:
        print("not composite")
        return EX_OK
    a, b = found
    name_a = classify_algebra(a).family_name or f"order-{a.n}"
    name_b = classify_algebra(b).family_name or f"order-{b.n}"
    print(f"composite: {name_a} x {name_b}")
    sys.stdout.write(formats.render_table(a.table))
    print()
    sys.stdout.write(formats.render_table(b.table))
    return EX_OK


def _cmd_verify_model(args) -> int:
    algebra = _load_algebra(args.table)
    text = _read(args.model)
    try:
        doc = formats.model_from_json(text, algebra.table)
    except formats.ParseError as exc:
        print(f"{args.model}: {exc}", file=sys.stderr)
        raise _Exit(EX_NOINPUT) from None
    if doc.kind == "multiplicative":
        verdict = models.verify_multiplicative(algebra, doc.multiplicative)
    elif doc.kind == "fuzzy":
        verdict = models.verify_fuzzy(algebra, doc.fuzzy, weak=doc.weak)
    else:
        verdict = models.verify_quantum_matrices(algebra, doc.matrices, tol=args.tol)
    if verdict:
        print("model verified")
        return EX_OK
    witness = ",".join(
        algebra.labels[w] if isinstance(w, int) and 0 <= w < algebra.n else str(w)
        for w in (verdict.witness or ())
    )
    print(f"model refuted [{witness}]: {verdict.message}")
    return 1


def _cmd_catalog(args) -> int:
    if args.export:
        try:
            table = catalog.table(args.export)
        except KeyError:
            print(f"unknown catalog name: {args.export}", file=sys.stderr)
            raise _Exit(EX_NOINPUT) from None
        sys.stdout.write(formats.render_table(table, args.format))
        return EX_OK
    for entry in catalog.entries():
        quantum = entry.expected.get("quantum")
        print(f"{entry.name:8s} n={entry.algebra.n}  quantum={quantum}  {entry.description}")
    return EX_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="effalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all effect algebras of one order")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=["json", "ascii"], default="ascii")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("validate", help="check a table file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="structural and state-space report")
    p.add_argument("file", nargs="?")
    p.add_argument("--name")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("states", help="state polytope of a table")
    p.add_argument("file")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--min-fuzzy-dim", action="store_true")
    p.set_defaults(func=_cmd_states)

    p = sub.add_parser("canon", help="canonical form of a table")
    p.add_argument("file")
    p.add_argument("--format", choices=["ascii", "latex", "json"], default="ascii")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("iso", help="isomorphism test for two tables")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("compose", help="composite of two tables")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["ascii", "latex", "json"], default="ascii")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("factor", help="search for a composite factorization")
    p.add_argument("file")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("verify-model", help="check a model file against a table")
    p.add_argument("table")
    p.add_argument("model")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify_model)

    p = sub.add_parser("catalog", help="bundled named algebras")
    p.add_argument("--list", action="store_true")
    p.add_argument("--export")
    p.add_argument("--format", choices=["ascii", "latex", "json"], default="ascii")
    p.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    if args.command == "classify" and not args.name and not args.file:
        print("classify needs a file or --name", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except _Exit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
