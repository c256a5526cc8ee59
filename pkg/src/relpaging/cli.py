"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 validation failure, 3 search budget refused.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis.bounds import UnsupportedInterval, analytic_interval, bounds_table, render_csv, render_markdown
from .analysis.phases import k_phases
from .analysis.search import DEFAULT_BUDGET, BudgetExceeded, curve_csv, diff_ratio_curve, exhaustive_minmax
from .engine import ALGORITHMS, CacheConfig, simulate
from .families import FAMILIES, FamilyParameterError, FamilySpec, expand
from .graphs import EdgeViolation, GraphError, PageRangeError, graph_from_json, parse_graph_spec, random_walk
from .validation import validate

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def int_list(text: str) -> list[int]:
    """Parse ``3..6`` (inclusive) or ``1,2,5``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 3..6 or a list like 1,2,5, got {text!r}")


def alg_list(text: str) -> list[str]:
    algs = [a.strip().upper() for a in text.split(",") if a.strip()]
    for a in algs:
        if a not in ALGORITHMS:
            raise argparse.ArgumentTypeError(f"unknown algorithm {a!r}; choose from {','.join(ALGORITHMS)}")
    return algs


def alg_pair(text: str) -> tuple[str, str]:
    algs = alg_list(text)
    if len(algs) != 2:
        raise argparse.ArgumentTypeError("--pair takes exactly two algorithms, e.g. FIFO,LRU")
    return algs[0], algs[1]


def resolve_graph(args, required=True):
    if args.graph and args.graph_file:
        raise UsageError("give --graph or --graph-file, not both")
    if args.graph:
        return parse_graph_spec(args.graph)
    if args.graph_file:
        return graph_from_json(Path(args.graph_file).read_text())
    if required:
        raise UsageError("a graph is required (--graph class:N or --graph-file)")
    return None


def family_spec(args, graph=None) -> FamilySpec:
    if args.k is None or args.n is None:
        raise UsageError("--family needs --k and --n")
    N = args.N
    if N is None and graph is not None and args.r is None:
        N = graph.n_vertices
    return FamilySpec(args.family, args.k, args.n, N, args.r)


def emit(args, payload, text: str, csv_text: str | None = None) -> None:
    if args.fmt == "json":
        config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "fmt")}
        doc = {"meta": {"tool": "relpaging", "version": __version__, "command": args.command,
                        "config": config, "timestamp": datetime.now(timezone.utc).isoformat()},
               "payload": payload}
        out = json.dumps(doc, indent=2, default=str) + "\n"
    elif args.fmt == "csv":
        if csv_text is None:
            raise UsageError(f"{args.command} has no CSV output")
        out = csv_text
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


def cmd_simulate(args) -> int:
    sources = [s for s in ("seq", "seq_file", "family", "random") if getattr(args, s) is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --seq, --seq-file, --family, --random")
    graph = resolve_graph(args, required=args.family is None)
    if args.family is not None:
        inst = expand(family_spec(args, graph))
        requests = inst.requests
        graph = graph or inst.graph
    elif args.random is not None:
        requests = random_walk(graph, args.random, random.Random(args.seed))
    else:
        text = args.seq if args.seq is not None else Path(args.seq_file).read_text().replace("\n", ",")
        try:
            requests = [int(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise UsageError("sequences are integers separated by commas or newlines")
    if args.k is None:
        raise UsageError("--k is required")
    cfg = CacheConfig(args.k, graph)
    phases = k_phases(requests, args.k)
    results, traces = [], {}
    for alg in args.algs:
        try:
            trace = simulate(alg, requests, cfg, validate=not args.no_validate)
        except (EdgeViolation, PageRangeError) as exc:
            raise ValidationFailure(str(exc))
        trace.per_phase_faults = phases.attach_faults(alg, trace.fault_flags())
        results.append({"algorithm": alg, "faults": trace.total_faults,
                        "per_phase_faults": trace.per_phase_faults})
        if args.trace:
            traces[alg] = [o.to_dict() for o in trace.outcomes]
    payload = {"graph": graph.descriptor(), "k": args.k, "length": len(requests),
               "complete_phases": phases.complete_count, "results": results}
    if args.trace:
        payload["sequence"] = requests
        payload["traces"] = traces
    text = f"graph {graph.descriptor()}  k={args.k}  length={len(requests)}  complete phases={phases.complete_count}\n"
    text += _table([[r["algorithm"], r["faults"], " ".join(map(str, r["per_phase_faults"]))] for r in results],
                   ["alg", "faults", "per-phase"])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["algorithm", "faults", "length"])
    for r in results:
        w.writerow([r["algorithm"], r["faults"], len(requests)])
    emit(args, payload, text, buf.getvalue())
    return EXIT_OK


def cmd_validate_families(args) -> int:
    families = args.family.split(",") if args.family else None
    for fid in families or ():
        if fid not in FAMILIES:
            raise UsageError(f"unknown family {fid!r}")
    checks = validate(families, args.k_list, args.n_list, args.max_N)
    rows = [c.to_dict() for c in checks]
    failed = [c for c in checks if not c.ok]
    header = ["family", "params", "quantity", "predicted", "simulated", "match"]
    shown = checks if args.all else failed
    text = _table([[c.family_id, c.params, c.quantity, "" if c.predicted is None else c.predicted,
                    c.simulated, "OK" if c.ok else "FAIL"] for c in shown], header) if shown else ""
    text += f"{len(checks)} checks, {len(checks) - len(failed)} OK, {len(failed)} FAIL\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([r["family_id"], r["params"], r["quantity"], "" if r["predicted"] is None else r["predicted"],
                    r["simulated"], r["match"]])
    emit(args, {"checks": rows, "total": len(checks), "failed": len(failed)}, text, buf.getvalue())
    return EXIT_VALIDATION if failed else EXIT_OK


def _fmt_iv(iv) -> str:
    return "-" if iv is None else f"[{iv[0]}, {iv[1]}] ~ [{float(iv[0]):.4f}, {float(iv[1]):.4f}]"


def cmd_interval(args) -> int:
    graph = resolve_graph(args)
    report = analytic_interval(args.pair, graph.class_tag, args.k, graph.n_vertices)
    code = EXIT_OK
    if args.n is not None:
        a, b = args.pair
        try:
            ext = exhaustive_minmax(a, b, graph, args.k, args.n, args.budget)
        except BudgetExceeded as exc:
            report.empirical = {"n": args.n, "refused": str(exc), "needed": exc.needed, "budget": exc.budget}
            code = EXIT_BUDGET
        else:
            emp = ext.to_dict()
            slack = Fraction(args.k + graph.n_vertices, args.n)
            lo, hi = Fraction(ext.min_diff, args.n), Fraction(ext.max_diff, args.n)
            emp.update(min_ratio=str(lo), max_ratio=str(hi), slack=str(slack),
                       consistent_with_outer=bool(report.outer[0] - slack <= lo and hi <= report.outer[1] + slack))
            report.empirical = emp
    payload = report.to_dict()
    lines = [f"{args.pair[0]} vs {args.pair[1]} on {graph.descriptor()}, k={args.k}",
             f"  inner  {_fmt_iv(report.inner)}", f"  outer  {_fmt_iv(report.outer)}",
             f"  exact  {'yes' if report.exact else 'no'}", f"  source {report.source}"]
    if report.extras:
        lines.append("  " + " ".join(f"{k}={v}" for k, v in report.extras.items()))
    emp = report.empirical
    if emp and "refused" in emp:
        lines.append(f"  search refused: {emp['refused']}")
    elif emp:
        lines.append(f"  n={emp['n']}: min diff {emp['min_diff']} {emp['min_witness']}, "
                     f"max diff {emp['max_diff']} {emp['max_witness']} over {emp['sequences']} sequences")
    emit(args, payload, "\n".join(lines))
    if code == EXIT_BUDGET:
        print(report.empirical["refused"], file=sys.stderr)
    return code


def cmd_bounds_table(args) -> int:
    rows = bounds_table(args.k, args.N)
    emit(args, rows, render_markdown(rows), render_csv(rows))
    return EXIT_OK


def cmd_list_families(args) -> int:
    rows = [{"family_id": fid, "graph": cls, "params": params} for fid, (cls, params) in FAMILIES.items()]
    text = _table([[r["family_id"], r["graph"], r["params"]] for r in rows], ["family", "graph", "params"])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["family_id", "graph", "params"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    emit(args, rows, text, buf.getvalue())
    return EXIT_OK


def cmd_expand(args) -> int:
    inst = expand(family_spec(args))
    d = inst.to_dict()
    text = (f"{inst.spec.family_id} on {inst.graph.descriptor()}, length {len(inst.requests)}\n"
            + ",".join(map(str, inst.requests)) + "\n"
            + "predicted: " + " ".join(f"{a}={v}" for a, v in sorted(inst.prediction.predicted_faults.items())))
    emit(args, d, text)
    return EXIT_OK


def cmd_curve(args) -> int:
    if args.k is None:
        raise UsageError("--k is required")
    spec = FamilySpec(args.family, args.k, 0, args.N, args.r)
    points = diff_ratio_curve(args.pair[0], args.pair[1], spec, args.n_list)
    rows = [p.row() for p in points]
    text = _table([[r["n"], r["len"], r["faults_A"], r["faults_B"], r["diff"], r["ratio"]] for r in rows],
                  ["n", "len", args.pair[0], args.pair[1], "diff", "ratio"])
    emit(args, rows, text, curve_csv(points))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON report")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="CSV output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.set_defaults(fmt="text")

    graph = _Parser(add_help=False)
    graph.add_argument("--graph", help="graph as class:N, e.g. cycle:8 (class: path, star, cycle, complete)")
    graph.add_argument("--graph-file", help="JSON graph {n_vertices, class_tag, edges}")

    fam = _Parser(add_help=False)
    fam.add_argument("--k", type=int, help="cache size")
    fam.add_argument("--n", type=int, help="repetition parameter (or search length)")
    fam.add_argument("--N", type=int, help="number of vertices where the family allows it")
    fam.add_argument("--r", type=int, help="N - k for cycle families")

    parser = _Parser(prog="relpaging", description="Paging algorithms on access graphs.")
    parser.add_argument("--version", action="version", version=f"relpaging {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common, graph, fam], help="run algorithms on a sequence")
    p.add_argument("--family", help="generate the sequence from a family")
    p.add_argument("--seq", help="inline sequence, comma separated")
    p.add_argument("--seq-file", help="file with one page id per line")
    p.add_argument("--random", type=int, metavar="LEN", help="random graph walk of this length")
    p.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")
    p.add_argument("--algs", type=alg_list, default=list(ALGORITHMS), help="comma-separated algorithms")
    p.add_argument("--trace", action="store_true", help="include full per-request traces")
    p.add_argument("--no-validate", action="store_true", help="skip the respects check")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate-families", parents=[common], help="compare closed forms with simulation")
    p.add_argument("--family", help="comma-separated family ids (default: all)")
    p.add_argument("--k-list", type=int_list, default=list(range(2, 9)), help="k values, e.g. 3..6")
    p.add_argument("--n-list", type=int_list, default=list(range(1, 13)), help="n values, e.g. 1..8")
    p.add_argument("--max-N", type=int, default=16, help="largest cycle size to include")
    p.add_argument("--all", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_validate_families)

    p = sub.add_parser("interval", parents=[common, graph], help="analytic bounds and exhaustive extremes")
    p.add_argument("--pair", type=alg_pair, required=True, help="A,B")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="also search every sequence of this length")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max simulation steps for the search")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("bounds-table", parents=[common], help="summary table of analytic intervals")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, help="cycle size for the cycle rows")
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("list-families", parents=[common], help="list sequence families")
    p.set_defaults(func=cmd_list_families)

    p = sub.add_parser("expand", parents=[common, fam], help="print a family instance")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("curve", parents=[common], help="difference ratio along a family")
    p.add_argument("--pair", type=alg_pair, required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--n-list", type=int_list, required=True)
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"relpaging: validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (UsageError, GraphError, FamilyParameterError, UnsupportedInterval, OSError) as exc:
        print(f"relpaging: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
