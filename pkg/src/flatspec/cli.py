"""Command-line front end: ``flatspec <command> ...``.

Exit status is 0 on success, 1 when a verification finds a mismatch and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import constructions as C
from .boolfunc import (
    FormatError,
    anf_to_function,
    degree,
    format_anf,
    graph_of_quadratic,
    parse_anf,
    quadratic_of_graph,
)
from .constructions import Family, FormulaError, build
from .gf2 import TransformSet
from .interlace import Q_eval, q_poly
from .orbits import GateError, code_distance, gf4_generator, lc_orbit, search_functions, search_quadratics
from .tables import emit_tables
from .transform import METHODS, MethodError, count_flat, count_flat_graph

log = logging.getLogger("flatspec")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"4"``, ``"1..10"`` or ``"2,3,7"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N, A..B or a comma list") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _add_input(p: argparse.ArgumentParser, family_m: bool = True) -> None:
    p.add_argument("--anf", help='function in digit notation, e.g. "02,13,23"')
    p.add_argument("--family", help="line | clique | clc | constant | monomial")
    p.add_argument("--n", type=int, help="variable count (first clique size for clc)")
    if family_m:
        p.add_argument("--m", type=int, help="second clique size for clc")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def _resolve(args) -> tuple[str, object]:
    """Return (label, AnfPolynomial) from exactly one of --anf / --family."""
    if (args.anf is None) == (args.family is None):
        raise UsageError("give exactly one of --anf or --family")
    if args.n is None:
        raise UsageError("--n is required")
    if args.anf is not None:
        return args.anf, parse_anf(args.anf, args.n)
    fam = Family(args.family, args.n, getattr(args, "m", None))
    return str(fam), build(fam)


def _inputs(args) -> dict:
    skip = {"func", "format", "out", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def cmd_count(args) -> dict:
    label, p = _resolve(args)
    method = args.method
    if method == "rank" and degree(p) > 2:
        log.warning("rank method needs a quadratic; falling back to spectral for degree %d", degree(p))
        method = "spectral"
    rep = count_flat(anf_to_function(p), args.set, method, detail=args.detail, tol=args.tol, jobs=args.jobs)
    row = {"function": label, "anf": format_anf(p)}
    row.update(rep.as_dict())
    mismatches = []
    if args.family is not None:
        fam = Family(args.family, args.n, args.m)
        try:
            expected = C.predicted_count(fam, args.set)
        except FormulaError:
            expected = None
        if expected is not None:
            row["count"] = {"expected": expected, "measured": rep.flat_count, "source": "formula"}
            if expected != rep.flat_count:
                mismatches.append({"row": str(fam), "cell": "count", "expected": expected,
                                   "measured": rep.flat_count})
    return {"results": [row], "mismatches": mismatches}


def cmd_construct(args) -> dict:
    if args.family is None or args.n is None:
        raise UsageError("construct needs --family and --n")
    fam = Family(args.family, args.n, args.m)
    p = build(fam)
    return {"results": [{"family": str(fam), "n": p.n, "anf": format_anf(p)}], "mismatches": []}


def cmd_verify(args) -> dict:
    kind = Family(args.family, 1, 1 if args.family == "clc" else None).kind
    ns = parse_range(args.n)
    ms = parse_range(args.m) if args.m else ([None] if kind != "clc" else ns)
    tset = TransformSet.parse(args.set)
    results, mismatches = [], []
    for n in ns:
        for m in ms:
            fam = Family(kind, n, m)
            row = {"label": str(fam), "family": kind, "n": n, "m": m, "set": tset.value}
            try:
                expected = C.predicted_count(fam, tset)
            except FormulaError as exc:
                row["status"] = f"skipped: {exc}"
                results.append(row)
                continue
            p = build(fam)
            if degree(p) <= 2:
                measured = count_flat_graph(graph_of_quadratic(p), tset, args.jobs)
            else:
                measured = count_flat(anf_to_function(p), tset, "spectral").flat_count
            row["count"] = {"expected": expected, "measured": measured, "source": "formula"}
            row["status"] = "match" if expected == measured else "mismatch"
            if expected != measured:
                mismatches.append({"row": str(fam), "cell": "count", "expected": expected, "measured": measured})
            results.append(row)
    return {"results": results, "mismatches": mismatches}


def cmd_search(args) -> dict:
    if args.n is None:
        raise UsageError("search needs --n")
    if args.degree == 2:
        max_n = args.max_n if args.max_n is not None else 6
        res = search_quadratics(args.n, args.set, max_n=max_n, jobs=args.jobs)
    else:
        res = search_functions(args.n, args.degree, args.set, budget=args.budget, jobs=args.jobs)
    return {"results": [res.as_dict()], "mismatches": []}


def cmd_distance(args) -> dict:
    label, p = _resolve(args)
    g = graph_of_quadratic(p)
    row = {"function": label, "n": g.n, "distance": code_distance(g)}
    if args.generator:
        row["generator"] = gf4_generator(g).rows()
    return {"results": [row], "mismatches": []}


def cmd_orbit(args) -> dict:
    label, p = _resolve(args)
    orbit = lc_orbit(graph_of_quadratic(p))
    rows = []
    for h in orbit:
        row = {"anf": format_anf(quadratic_of_graph(h))}
        if args.counts:
            row["K_IHN"] = count_flat_graph(h, TransformSet.IHN)
        rows.append(row)
    return {"results": [{"function": label, "orbit_size": len(orbit), "members": rows}], "mismatches": []}


def cmd_interlace(args) -> dict:
    label, p = _resolve(args)
    g = graph_of_quadratic(p)
    q = q_poly(g)
    xs = parse_range(args.x) if args.x else [1, 2]
    row = {"function": label, "q": str(q), "q_values": {str(x): q(x) for x in xs},
           "Q_values": {}}
    for x in (parse_range(args.big_x) if args.big_x else [2]):
        row["Q_values"][str(x)] = {"value": Q_eval(g, x),
                                   "definition": "flat count" if x == 2 else "extrapolated definition"}
    return {"results": [row], "mismatches": []}


def cmd_tables(args) -> dict:
    reports = emit_tables(args.table, max_n=args.max_n, max_nm=args.max_nm, max_search_n=args.max_search_n,
                          max_rep_n=args.max_rep_n, max_func_search_n=args.max_func_search_n, jobs=args.jobs)
    results = [r.as_dict() for r in reports]
    mismatches = [m for r in reports for m in r.mismatches]
    return {"results": results, "mismatches": mismatches}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatspec", description="Flat spectra of Boolean functions under {I,H,N}^n.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="flat count of one function")
    _add_input(p)
    p.add_argument("--set", default="ihn", choices=[s.value for s in TransformSet])
    p.add_argument("--method", default="rank", choices=METHODS)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--detail", action="store_true", help="list the flat assignments")
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("construct", help="emit the ANF of a family member")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="predicted vs measured counts over a range")
    p.add_argument("--family", required=True)
    p.add_argument("--set", default="ihn", choices=[s.value for s in TransformSet])
    p.add_argument("--n", required=True, help="N, A..B or comma list")
    p.add_argument("--m", help="range for the second clique (clc only)")
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="maximum flat count over all functions of a degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--set", default="ihn", choices=[s.value for s in TransformSet])
    p.add_argument("--budget", type=float, help="override the default gate (functions x assignments)")
    p.add_argument("--max-n", type=int, help="raise the quadratic search gate")
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("distance", help="distance of the GF(4)-additive code of a quadratic")
    _add_input(p)
    p.add_argument("--generator", action="store_true", help="also print Gamma + wI")
    _add_output(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("orbit", help="local complementation orbit of a quadratic")
    _add_input(p)
    p.add_argument("--counts", action="store_true", help="include each member's {I,H,N} count")
    _add_output(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("interlace", help="q polynomial and Q evaluations")
    _add_input(p)
    p.add_argument("--x", help="points for q (default 1,2)")
    p.add_argument("--Q-at", dest="big_x", help="points for Q (default 2)")
    _add_output(p)
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("tables", help="regenerate the published tables and diff them")
    p.add_argument("--table", default="all", help="I, II, III, IV, V or all")
    p.add_argument("--max-n", type=int, default=8, help="largest n for single-parameter families")
    p.add_argument("--max-nm", type=int, default=10, help="largest n+m for clique-line-clique")
    p.add_argument("--max-search-n", type=int, default=6, help="largest n for exhaustive quadratic search")
    p.add_argument("--max-rep-n", type=int, default=9, help="largest n for representative checks")
    p.add_argument("--max-func-search-n", type=int, default=5, help="largest n for degree > 2 searches")
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_tables)
    return parser


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out[key] = json.dumps(v, separators=(",", ":"))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _rows_for_csv(report: dict) -> list[dict]:
    rows = []
    for r in report["results"]:
        if report["command"] == "tables":
            for row in r["rows"]:
                rows.append(_flatten({"table": r["table"], **row}))
        else:
            rows.append(_flatten(r))
    return rows


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        rows = _rows_for_csv(report)
        fields: list[str] = []
        for r in rows:
            fields.extend(k for k in r if k not in fields)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = []
    for r in report["results"]:
        if report["command"] == "tables":
            lines.append(f"Table {r['table']}")
            for row in r["rows"]:
                lines.append("  " + _text_row(row))
            lines.extend(f"  note: {n}" for n in r["notes"])
        else:
            lines.append(_text_row(r))
    if report["mismatches"]:
        lines.append(f"{len(report['mismatches'])} mismatch(es)")
        lines.extend("  " + json.dumps(m) for m in report["mismatches"])
    return "\n".join(lines) + "\n"


def _text_row(row: dict) -> str:
    parts = []
    for k, v in row.items():
        if isinstance(v, dict) and "expected" in v:
            mark = "not recomputed" if v.get("status") else ("match" if v["expected"] == v["measured"] else "MISMATCH")
            parts.append(f"{k}={v['measured']} (expected {v['expected']}, {mark})")
        elif isinstance(v, (dict, list)):
            parts.append(f"{k}={json.dumps(v)}")
        else:
            parts.append(f"{k}={v}")
    return " ".join(parts)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        body = args.func(args)
    except (UsageError, FormatError, GateError, MethodError, FormulaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": args.command, "inputs": _inputs(args), **body}
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_MISMATCH if report["mismatches"] else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
