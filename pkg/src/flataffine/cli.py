"""Batch front-end: read a JSON task file, run the computations, write reports.

The task file is versioned with a top-level "schema": 1.  Sections (all
optional except schema and tasks): "charts", "algebras", "fields",
"connections", "tasks"; every referenced name must be defined in the file.
All indices in the file and in reports are 1-based; rationals are serialized
as strings "p/q" so no numeric precision is lost.

Exit codes: 0 when every task ran and every verdict-type task holds, 1 on any
negative verdict (the report carries the witness), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import (
    JacobiError,
    LieAlgebraSC,
    SCAlgebra,
    check_associative,
    check_left_symmetric,
    commutator_algebra,
    subalgebra_closure,
)
from .envelope import compute_envelope, verify_bi_invariant_criterion
from .geometry import (
    Connection,
    Frame,
    IATViolationError,
    NotFlatError,
    NotInSpanError,
    SingularFrameError,
    VectorField,
    connection_from_frame,
    curvature,
    is_infinitesimal_affine,
    product_table,
    solve_iat_ansatz,
    torsion,
)
from .render import render_table_text
from .symcore import Chart, ExpressionError, UnknownVariableError, parse_expr

SCHEMA_VERSION = 1

TASK_KINDS = (
    "check-lsa",
    "check-associative",
    "commutator",
    "closure",
    "torsion",
    "curvature",
    "check-iat",
    "solve-iat",
    "product-table",
    "envelope",
    "bi-invariant-check",
)


class TaskFileError(ValueError):
    """Schema violation, with a path into the offending part of the document."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class _Document:
    def __init__(self):
        self.charts = {}
        self.algebras = {}
        self.fields = {}       # name -> VectorField
        self.field_charts = {}  # name -> chart name
        self.connections = {}
        self.tasks = []


def _require(condition, message, path):
    if not condition:
        raise TaskFileError(message, path)


def _parse(source, chart, path) -> object:
    try:
        return parse_expr(source, chart)
    except (ExpressionError, UnknownVariableError, ZeroDivisionError) as err:
        raise TaskFileError(f"bad expression {source!r}: {err}", path) from None


def load_document(doc: dict) -> _Document:
    _require(isinstance(doc, dict), "task file must be a JSON object", "/")
    _require(doc.get("schema") == SCHEMA_VERSION,
             f'missing or unsupported "schema" (expected {SCHEMA_VERSION})', "/schema")
    out = _Document()
    for idx, entry in enumerate(doc.get("charts", [])):
        path = f"/charts/{idx}"
        _require(isinstance(entry, dict) and "name" in entry and "variables" in entry,
                 'chart entries need "name" and "variables"', path)
        try:
            chart = Chart(entry["name"], entry["variables"])
        except ValueError as err:
            raise TaskFileError(str(err), path) from None
        _require(chart.name not in out.charts, f"duplicate chart {chart.name!r}", path)
        out.charts[chart.name] = chart
    for idx, entry in enumerate(doc.get("algebras", [])):
        path = f"/algebras/{idx}"
        _require(isinstance(entry, dict) and "name" in entry,
                 'algebra entries need a "name"', path)
        try:
            algebra = SCAlgebra.from_json_dict(entry)
        except (ValueError, KeyError) as err:
            raise TaskFileError(f"bad algebra: {err}", path) from None
        _require(entry["name"] not in out.algebras,
                 f"duplicate algebra {entry['name']!r}", path)
        out.algebras[entry["name"]] = algebra
    for idx, entry in enumerate(doc.get("fields", [])):
        path = f"/fields/{idx}"
        _require(isinstance(entry, dict) and {"name", "chart", "coeffs"} <= set(entry),
                 'field entries need "name", "chart" and "coeffs"', path)
        _require(entry["chart"] in out.charts,
                 f"undefined chart {entry['chart']!r}", path)
        chart = out.charts[entry["chart"]]
        coeffs = [_parse(c, chart, f"{path}/coeffs/{k}")
                  for k, c in enumerate(entry["coeffs"])]
        _require(len(coeffs) == chart.dim,
                 f"expected {chart.dim} coefficients", path)
        _require(entry["name"] not in out.fields,
                 f"duplicate field {entry['name']!r}", path)
        out.fields[entry["name"]] = VectorField(chart, coeffs)
        out.field_charts[entry["name"]] = chart.name
    for idx, entry in enumerate(doc.get("connections", [])):
        path = f"/connections/{idx}"
        _require(isinstance(entry, dict) and "name" in entry and "chart" in entry,
                 'connection entries need "name" and "chart"', path)
        _require(entry["chart"] in out.charts,
                 f"undefined chart {entry['chart']!r}", path)
        chart = out.charts[entry["chart"]]
        if "christoffel" in entry:
            sparse = []
            for k, item in enumerate(entry["christoffel"]):
                ipath = f"{path}/christoffel/{k}"
                _require(isinstance(item, dict) and {"k", "i", "j", "expr"} <= set(item),
                         'christoffel entries need "k", "i", "j", "expr"', ipath)
                sparse.append((item["k"], item["i"], item["j"],
                               _parse(item["expr"], chart, ipath)))
            try:
                conn = Connection.from_sparse(chart, sparse)
            except ValueError as err:
                raise TaskFileError(str(err), path) from None
        elif "frame" in entry:
            _require("constants" in entry,
                     'frame connections need "constants" (an algebra name)', path)
            frame_fields = []
            for k, fname in enumerate(entry["frame"]):
                _require(fname in out.fields, f"undefined field {fname!r}",
                         f"{path}/frame/{k}")
                frame_fields.append(out.fields[fname])
            _require(entry["constants"] in out.algebras,
                     f"undefined algebra {entry['constants']!r}", path)
            try:
                conn = connection_from_frame(Frame(frame_fields),
                                             out.algebras[entry["constants"]])
            except (ValueError, SingularFrameError) as err:
                raise TaskFileError(str(err), path) from None
        else:
            raise TaskFileError('connection needs "christoffel" or "frame"', path)
        _require(entry["name"] not in out.connections,
                 f"duplicate connection {entry['name']!r}", path)
        out.connections[entry["name"]] = conn
    tasks = doc.get("tasks", [])
    _require(isinstance(tasks, list), '"tasks" must be a list', "/tasks")
    for idx, task in enumerate(tasks):
        path = f"/tasks/{idx}"
        _require(isinstance(task, dict), "task must be an object", path)
        kind = task.get("kind")
        _require(kind in TASK_KINDS,
                 f"unknown task kind {kind!r}; valid kinds: {', '.join(TASK_KINDS)}",
                 f"{path}/kind")
        out.tasks.append(dict(task))
    return out


# ----- task runners -----------------------------------------------------------


def _get_algebra(doc, task, key, path) -> SCAlgebra:
    name = task.get(key)
    _require(isinstance(name, str) and name in doc.algebras,
             f"undefined algebra {name!r}", f"{path}/{key}")
    return doc.algebras[name]


def _get_connection(doc, task, path) -> Connection:
    name = task.get("connection")
    _require(isinstance(name, str) and name in doc.connections,
             f"undefined connection {name!r}", f"{path}/connection")
    return doc.connections[name]


def _get_fields(doc, task, path):
    names = task.get("fields")
    _require(isinstance(names, list) and names, 'task needs a "fields" list', f"{path}/fields")
    fields = []
    for k, name in enumerate(names):
        _require(name in doc.fields, f"undefined field {name!r}", f"{path}/fields/{k}")
        fields.append(doc.fields[name])
    return names, fields


def _run_check_lsa(doc, task, path):
    report = check_left_symmetric(_get_algebra(doc, task, "algebra", path))
    return report.holds, report.witness, {}


def _run_check_associative(doc, task, path):
    report = check_associative(_get_algebra(doc, task, "algebra", path))
    return report.holds, report.witness, {}


def _run_commutator(doc, task, path):
    algebra = _get_algebra(doc, task, "algebra", path)
    try:
        lie = commutator_algebra(algebra)
    except JacobiError as err:
        return False, err.witness, {"error": "jacobi identity fails"}
    return None, None, {"lie": lie.to_json_dict()}


def _run_closure(doc, task, path):
    algebra = _get_algebra(doc, task, "algebra", path)
    gens = task.get("generators")
    _require(isinstance(gens, list) and gens, 'task needs "generators"', f"{path}/generators")
    vectors = []
    for k, g in enumerate(gens):
        if isinstance(g, str):
            try:
                vectors.append(algebra.basis_vector(algebra.basis_index(g)))
            except KeyError as err:
                raise TaskFileError(str(err), f"{path}/generators/{k}") from None
        else:
            _require(isinstance(g, list) and len(g) == algebra.dim,
                     f"generator vectors need length {algebra.dim}",
                     f"{path}/generators/{k}")
            vectors.append([_fraction(x, f"{path}/generators/{k}") for x in g])
    space = subalgebra_closure(algebra, vectors)
    payload = {
        "rank": space.rank,
        "rows": [[str(x) for x in row] for row in space.rows],
        "named_basis": space.named_basis(algebra.basis_names),
    }
    if "expect_rank" in task:
        expected = task["expect_rank"]
        if space.rank != expected:
            return False, ("rank", space.rank, expected), payload
        return True, None, payload
    return None, None, payload


def _fraction(x, path):
    try:
        from fractions import Fraction
        return Fraction(x)
    except (ValueError, TypeError) as err:
        raise TaskFileError(f"bad rational {x!r}: {err}", path) from None


def _tensor_payload(report):
    return {
        "zero": report.is_zero,
        "nonzero": [{"index": list(idx), "name": report.component_name(idx),
                     "expr": str(report.components[idx])}
                    for idx in report.nonzero],
    }


def _run_tensor(compute):
    def runner(doc, task, path):
        report = compute(_get_connection(doc, task, path))
        payload = _tensor_payload(report)
        if "expect_zero" in task:
            expected = bool(task["expect_zero"])
            if report.is_zero != expected:
                witness = report.component_name(report.nonzero[0]) if report.nonzero else None
                return False, witness, payload
            return True, None, payload
        return None, None, payload
    return runner


def _run_check_iat(doc, task, path):
    conn = _get_connection(doc, task, path)
    name = task.get("field")
    _require(isinstance(name, str) and name in doc.fields,
             f"undefined field {name!r}", f"{path}/field")
    try:
        report = is_infinitesimal_affine(conn, doc.fields[name])
    except NotFlatError as err:
        raise TaskFileError(str(err), path) from None
    return report.holds, report.witness, {}


def _run_solve_iat(doc, task, path):
    conn = _get_connection(doc, task, path)
    ansatz = task.get("ansatz")
    _require(isinstance(ansatz, list) and ansatz, 'task needs an "ansatz" list',
             f"{path}/ansatz")
    terms = [_parse(t, conn.chart, f"{path}/ansatz/{k}") for k, t in enumerate(ansatz)]
    try:
        fields = solve_iat_ansatz(conn, terms)
    except ValueError as err:   # non-flat connection, dependent ansatz
        raise TaskFileError(str(err), path) from None
    payload = {
        "dimension": len(fields),
        "fields": [{"coeffs": [str(c) for c in f.coeffs]} for f in fields],
    }
    return None, None, payload


def _run_product_table(doc, task, path):
    conn = _get_connection(doc, task, path)
    names, fields = _get_fields(doc, task, path)
    try:
        table = product_table(conn, fields, names)
    except NotFlatError as err:
        raise TaskFileError(str(err), path) from None
    except IATViolationError as err:
        return False, (err.field_name,) + tuple(err.witness), {"error": str(err)}
    except NotInSpanError as err:
        return False, err.pair, {"error": str(err)}
    payload = {"table": table.to_json_dict(), "text": render_table_text(table)}
    if "expect" in task:
        expected = _get_algebra(doc, task, "expect", path)
        _require(expected.dim == table.dim,
                 "expected table has a different dimension", f"{path}/expect")
        for i in range(table.dim):
            for j in range(table.dim):
                if table.c[i][j] != expected.c[i][j]:
                    return False, (i + 1, j + 1), payload
        return True, None, payload
    return None, None, payload


def _run_envelope(doc, task, path):
    conn = _get_connection(doc, task, path)
    names, fields = _get_fields(doc, task, path)
    gens = task.get("generators")
    _require(isinstance(gens, list) and gens, 'task needs "generators"',
             f"{path}/generators")
    for k, g in enumerate(gens):
        _require(g in names, f"generator {g!r} is not among the task fields",
                 f"{path}/generators/{k}")
    try:
        report = compute_envelope(conn, fields, names, gens)
    except NotFlatError as err:
        raise TaskFileError(str(err), path) from None
    except (IATViolationError, NotInSpanError) as err:
        return False, getattr(err, "witness", None), {"error": str(err)}
    payload = report.to_json_dict()
    payload["text"] = report.to_text()
    verdict = all(report.checks.values())
    witness = None
    if not verdict:
        witness = [name for name, ok in report.checks.items() if not ok]
    if "expect_rank" in task and report.closure.rank != task["expect_rank"]:
        verdict = False
        witness = ("rank", report.closure.rank, task["expect_rank"])
    return verdict, witness, payload


def _run_bi_invariant(doc, task, path):
    bracket_source = _get_algebra(doc, task, "lie", path)
    algebra = _get_algebra(doc, task, "algebra", path)
    try:
        lie = LieAlgebraSC(bracket_source.basis_names, bracket_source.c)
    except ValueError as err:
        raise TaskFileError(
            f'algebra {task.get("lie")!r} does not define a Lie bracket: {err}',
            f"{path}/lie") from None
    try:
        verdict = verify_bi_invariant_criterion(lie, algebra)
    except ValueError as err:
        raise TaskFileError(str(err), path) from None
    return verdict, None, {}


_RUNNERS = {
    "check-lsa": _run_check_lsa,
    "check-associative": _run_check_associative,
    "commutator": _run_commutator,
    "closure": _run_closure,
    "torsion": _run_tensor(torsion),
    "curvature": _run_tensor(curvature),
    "check-iat": _run_check_iat,
    "solve-iat": _run_solve_iat,
    "product-table": _run_product_table,
    "envelope": _run_envelope,
    "bi-invariant-check": _run_bi_invariant,
}


def emit_table(algebra: SCAlgebra, format: str = "text") -> str:
    """Render a multiplication table; rows are the left factor."""
    if format == "text":
        return render_table_text(algebra)
    if format == "json":
        return json.dumps(algebra.to_json_dict(), indent=2)
    raise ValueError(f"unknown format {format!r} (expected 'text' or 'json')")


def _report_text(report: dict) -> str:
    lines = [f"task {report['id']} ({report['kind']}): {report['status']}"]
    if report.get("witness") is not None:
        lines.append(f"  witness: {report['witness']}")
    payload = report.get("data", {})
    if "text" in payload:
        lines.extend("  " + line for line in payload["text"].splitlines())
    elif "table" in payload:
        lines.extend("  " + line for line in payload["text"].splitlines())
    elif "rank" in payload:
        lines.append(f"  rank: {payload['rank']}")
        if payload.get("named_basis"):
            lines.append(f"  basis: {', '.join(payload['named_basis'])}")
    elif "dimension" in payload:
        lines.append(f"  dimension: {payload['dimension']}")
        for f in payload.get("fields", []):
            lines.append("  field: " + ", ".join(f["coeffs"]))
    elif "zero" in payload:
        lines.append(f"  zero: {payload['zero']}")
        for item in payload.get("nonzero", []):
            lines.append(f"  {item['name']} = {item['expr']}")
    elif "lie" in payload:
        lines.append(f"  brackets: {json.dumps(payload['lie'])}")
    if "error" in payload:
        lines.append(f"  error: {payload['error']}")
    return "\n".join(lines)


def run_document(doc: dict, out_dir=None, fmt: str = "both", fail_fast: bool = False):
    """Run all tasks; returns (exit_code, reports).  Reports follow file order."""
    document = load_document(doc)
    reports = []
    any_negative = False
    for index, task in enumerate(document.tasks):
        path = f"/tasks/{index}"
        task_id = str(task.get("id", f"t{index + 1}"))
        started = time.perf_counter()
        verdict, witness, payload = _RUNNERS[task["kind"]](document, task, path)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        status = "ok" if verdict is None else ("pass" if verdict else "fail")
        report = {
            "id": task_id,
            "kind": task["kind"],
            "status": status,
            "verdict": verdict,
            "witness": list(witness) if isinstance(witness, tuple) else witness,
            "data": payload,
            "elapsed_ms": elapsed_ms,
        }
        reports.append(report)
        if verdict is False:
            any_negative = True
            if fail_fast:
                break
    if out_dir is not None:
        out_path = Path(out_dir)
        out_path.mkdir(parents=True, exist_ok=True)
        for report in reports:
            if fmt in ("json", "both"):
                (out_path / f"{report['id']}.json").write_text(
                    json.dumps(report, indent=2) + "\n")
            if fmt in ("text", "both"):
                (out_path / f"{report['id']}.txt").write_text(
                    _report_text(report) + "\n")
    return (1 if any_negative else 0), reports


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="flataffine",
        description="Exact computations for flat affine geometry: identity checks, "
                    "product tables, infinitesimal affine transformations, envelopes.")
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run", help="run a JSON task file")
    run_parser.add_argument("taskfile", help="path to the task file")
    run_parser.add_argument("--out", default=None, help="directory for per-task reports")
    run_parser.add_argument("--format", choices=("text", "json", "both"),
                            default="both", help="report format (default both)")
    run_parser.add_argument("--fail-fast", action="store_true",
                            help="stop after the first negative verdict")
    args = parser.parse_args(argv)

    try:
        doc = json.loads(Path(args.taskfile).read_text())
    except OSError as err:
        print(f"error: cannot read {args.taskfile}: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(f"error: {args.taskfile} is not valid JSON: {err}", file=sys.stderr)
        return 2
    try:
        code, reports = run_document(doc, out_dir=args.out, fmt=args.format,
                                     fail_fast=args.fail_fast)
    except TaskFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    for report in reports:
        line = f"{report['id']} ({report['kind']}): {report['status']}"
        if report["witness"] is not None:
            line += f" witness={report['witness']}"
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
