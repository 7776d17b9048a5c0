"""Command-line front end.

Exit codes: 0 pass, 1 tolerance or bound failure, 2 input error,
3 node outside the unit disk, 4 numerically singular matrix.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .bounds import verify_bounds
from .confluent import build_matrix, inverse_rows
from .errors import ConfigurationError, HypothesisViolated, NumericallySingular, SingleNode
from .nodes import validate
from .oracle import compare
from .serialize import complex_pair, dumps, fmt_complex, fmt_real, matrix_pairs
from .sweep import DEFAULT_TOLERANCE, SweepSpec, format_csv, format_json, run_sweep, summarize

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_SINGULAR = 4


class InputError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def load_config(path):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    for name in ("nodes", "multiplicities"):
        if name not in data:
            raise InputError(f"{path}: missing field '{name}'")
        if not isinstance(data[name], list):
            raise InputError(f"{path}: field '{name}' must be a list")
    try:
        return validate(data["nodes"], data["multiplicities"])
    except ConfigurationError as exc:
        raise InputError(f"{path}: field '{exc.field}': {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: field 'nodes': {exc}") from None


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_real(v)
    return str(v)


def cmd_build(args, out):
    config = load_config(args.config)
    m = build_matrix(config).entries
    if args.format == "csv":
        out.write(_csv_text([[fmt_complex(z) for z in row] for row in m]))
    else:
        out.write(dumps(matrix_pairs(m)) + "\n")
    return EXIT_OK


def cmd_invert(args, out):
    config = load_config(args.config)
    rows = inverse_rows(config)
    entries = []
    for j, k in rows.keys():
        entry = {
            "node": j + 1,
            "k": k,
            "row": rows.flat_index(j, k) + 1,
            "coefficients": [complex_pair(z) for z in rows.rows[(j, k)]],
        }
        if args.norms:
            entry["norm"] = rows.row_l1_norms[(j, k)]
        entries.append(entry)
    if args.format == "csv":
        head = ["node", "k", "row"] + (["norm"] if args.norms else [])
        head += [f"c{i}" for i in range(config.N)]
        body = []
        for e, key in zip(entries, rows.keys()):
            line = [str(e["node"]), str(e["k"]), str(e["row"])]
            if args.norms:
                line.append(fmt_real(e["norm"]))
            line += [fmt_complex(z) for z in rows.rows[key]]
            body.append(line)
        out.write(_csv_text([head, *body]))
    else:
        out.write(dumps(entries) + "\n")
    return EXIT_OK


def cmd_bound(args, out):
    config = load_config(args.config)
    try:
        report = verify_bounds(config, inverse_rows(config))
    except SingleNode as exc:
        raise InputError(f"{args.config}: field 'nodes': {exc}") from None
    offsets = config.offsets()
    recs = [
        {
            "node": r.j + 1,
            "k": r.k,
            "row": offsets[r.j] + r.k + 1,
            "empirical_norm": r.empirical_norm,
            "bound": r.bound,
            "ratio": r.ratio,
            "satisfied": r.satisfied,
        }
        for r in report.records
    ]
    if args.format == "csv":
        head = list(recs[0])
        body = [[_cell(v) for v in rec.values()] for rec in recs]
        out.write(_csv_text([head, *body]))
    else:
        out.write(dumps({
            "N": report.N,
            "delta": report.delta,
            "multiplicities": list(report.multiplicities),
            "records": recs,
            "all_satisfied": report.all_satisfied,
        }) + "\n")
    return EXIT_OK if report.all_satisfied else EXIT_FAIL


def cmd_verify(args, out):
    config = load_config(args.config)
    tol = args.tolerance
    rep = compare(inverse_rows(config), config)
    ok = rep.max_entry_abs_diff <= tol
    fields = {
        "max_entry_abs_diff": rep.max_entry_abs_diff,
        "residual_VU": rep.residual_VU,
        "residual_UV": rep.residual_UV,
        "tolerance": tol,
        "pass": ok,
    }
    if args.format == "csv":
        out.write(_csv_text([list(fields), [_cell(v) for v in fields.values()]]))
    else:
        out.write(dumps(fields) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args, out):
    data = _read_json(args.spec)
    if not isinstance(data, dict):
        raise InputError(f"{args.spec}: expected a JSON object")
    if args.seed is not None:
        data = {**data, "seed": args.seed}
    if args.format_given:
        data = {**data, "output_format": args.format}
    try:
        spec = SweepSpec.from_json(data)
    except ValueError as exc:
        raise InputError(f"{args.spec}: field {exc}") from None
    records = run_sweep(spec, tolerance=args.tolerance, jobs=args.jobs)
    out.write(format_csv(records) if spec.output_format == "csv" else format_json(records))
    s = summarize(records)
    if s["skipped"] == s["trials"]:
        print(f"warning: all {s['trials']} trials skipped (sampling infeasible)", file=sys.stderr)
    return EXIT_OK if s["failed"] == 0 else EXIT_FAIL


def _global_options(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--format", choices=("json", "csv"), default=d,
                   help="output encoding (default json)")
    p.add_argument("--tolerance", type=float, default=d,
                   help=f"verify/sweep tolerance (default {DEFAULT_TOLERANCE:g})")
    p.add_argument("--seed", type=int, default=d, help="override the sweep seed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cvinv",
        description="Confluent Vandermonde matrices, closed-form inverses and norm bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="print the confluent Vandermonde matrix")
    p.add_argument("config")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invert", help="print the inverse rows u_{j,k}")
    p.add_argument("config")
    p.add_argument("--norms", action="store_true", help="include the l1 norm of each row")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("bound", help="compare row norms with the closed-form bound")
    p.add_argument("config")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="compare the closed-form inverse with dense LU")
    p.add_argument("config")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a seeded verification sweep")
    p.add_argument("spec")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output order is fixed)")
    p.set_defaults(func=cmd_sweep)

    for name in ("build", "invert", "bound", "verify", "sweep"):
        _global_options(sub.choices[name], suppress=True)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format_given = args.format is not None
    if args.format is None:
        args.format = "json"
    if args.tolerance is None:
        args.tolerance = DEFAULT_TOLERANCE
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NumericallySingular as exc:
        print(f"error: numerically singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
