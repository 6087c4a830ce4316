"""Command-line entry point: ``selfsim <command> ...``.

Exit codes: decide returns 0/1/2 for PositiveMeasure/MeasureZero/Unknown,
verify returns 0 when it accepts and 1 when it rejects, usage errors are 64,
unreadable report files 65, and a tripped enumeration guard 70.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .decide import Verdict, gns_classify
from .frontends import (
    Multigeometric,
    counterexample_search,
    ifs_decide,
    ifs_sweep,
    nitecki_classify,
    parse_ifs,
    reduce_multigeometric,
)
from .levelsets import (
    ENUMERATION_LIMIT,
    EnumerationLimitError,
    envelope,
    interval_csv_rows,
    level_intervals,
    stable_intervals,
)
from .numeric import format_exact, parse_exact, to_mpf
from .report import (
    ReportError,
    decide_document,
    decision_doc,
    dumps,
    exact_list,
    gns_doc,
    intervals_doc,
    verify_document,
)
from .sigma import parse_sigma

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_GUARD = 70

_VERDICT_EXIT = {Verdict.POSITIVE.value: 0, Verdict.ZERO.value: 1, Verdict.UNKNOWN.value: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational a/b, got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _levels(text: str) -> list[int]:
    """``3`` means levels 1..3; ``1,2,5`` lists them explicitly."""
    vals = _int_list(text)
    if any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("levels must be non-negative")
    if len(vals) == 1:
        return list(range(1, vals[0] + 1))
    return sorted(set(vals))


def _sigma(text: str, q=None):
    try:
        return parse_sigma(text, q)
    except ValueError as exc:
        raise UsageError(f"--sigma: {exc}") from exc


def _emit(doc: dict, path: str | None, started: float) -> None:
    doc["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    text = dumps(doc)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands -----------------------------------------------------------------------

def cmd_decide(args) -> int:
    started = time.perf_counter()
    sigma = _sigma(args.sigma)
    doc = decide_document(sigma, args.nmax, args.kmax, args.levels or [])
    _emit(doc, args.json, started)
    if args.json:
        lam = doc["lambda_E"]
        extra = f", lambda_E {'=' if lam['exact'] else '<='} {lam['value']}" if lam["value"] else ""
        print(f"{sigma}: {doc['verdict']} via {doc['fired_condition']}{extra}")
    return _VERDICT_EXIT[doc["verdict"]]


def _svg(rows: list[tuple[int, object]], lo, hi) -> str:
    height = 40 * len(rows)
    width = to_mpf(hi - lo)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="1000" height="{height}" viewBox="0 0 1000 {height}">',
        '<rect width="1000" height="%d" fill="white"/>' % height,
    ]
    for row, (n, union) in enumerate(rows):
        y = 40 * row + 8
        out.append(f'<g id="level-{n}">')
        for a, b in union:
            x0 = float(1000 * to_mpf(a - lo) / width)
            x1 = float(1000 * to_mpf(b - lo) / width)
            out.append(
                f'<rect x="{x0:.4f}" y="{y}" width="{max(x1 - x0, 0.0):.4f}" height="24" fill="black"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    sigma = _sigma(args.sigma, args.q)
    if not sigma.is_rational:
        raise UsageError("render needs rational digits (CSV endpoints are num/den)")
    rows = []
    try:
        for n in args.levels:
            rows.append((n, level_intervals(sigma, n, args.limit)))
    except EnumerationLimitError as exc:
        print(f"render: {exc}", file=sys.stderr)
        return EXIT_GUARD
    csv_lines = ["level,lo_num,lo_den,hi_num,hi_den"]
    for n, union in rows:
        csv_lines += [",".join(str(v) for v in r) for r in interval_csv_rows(n, union)]
    csv_text = "\n".join(csv_lines) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(csv_text)
    if args.svg:
        env = envelope(sigma)
        with open(args.svg, "w") as fh:
            fh.write(_svg(rows, env.e_min, env.e_max))
    if not args.csv and not args.svg:
        sys.stdout.write(csv_text)
    return 0


def cmd_multigeo(args) -> int:
    started = time.perf_counter()
    mg = Multigeometric(tuple(args.k), args.base)
    res = gns_classify(mg.k, mg.q, args.nmax, args.kmax)
    nit = nitecki_classify(mg)
    stable = None
    try:
        stable = stable_intervals(res.sigma, args.nmax, args.limit)
    except EnumerationLimitError:
        pass
    doc = {
        "schema_version": "1",
        "command": "multigeo",
        "input": {"k": list(mg.k), "base": mg.base, "nmax": args.nmax, "kmax": args.kmax},
        "reduced_k": list(reduce_multigeometric(mg).k),
        "series_total": format_exact(mg.total),
        **gns_doc(res),
        "nitecki": {
            "kind": nit.kind,
            "interval": None if nit.interval is None else exact_list(nit.interval),
            "printed_endpoint": None if nit.printed_endpoint is None else format_exact(nit.printed_endpoint),
            "reason": nit.reason,
        },
        # a cover equal to the next level's is E itself
        "intervals": None if stable is None else {
            "level": stable[0],
            "intervals": intervals_doc(stable[1]),
            "measure": format_exact(stable[1].measure()),
        },
    }
    _emit(doc, args.json, started)
    return 0


def _parse_u_list(text: str) -> list:
    try:
        return [parse_exact(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--u: {exc}") from exc


def cmd_ifs(args) -> int:
    started = time.perf_counter()
    try:
        ifs = parse_ifs(args.points)
    except ValueError as exc:
        raise UsageError(f"--points: {exc}") from exc
    if args.sweep is None and args.u is None:
        raise UsageError("ifs needs --sweep H or --u LIST")
    results = []
    if args.sweep is not None:
        results += ifs_sweep(ifs, args.sweep, args.nmax, args.kmax)
    if args.u is not None:
        results += [(u, ifs_decide(ifs, u, args.nmax, args.kmax)) for u in _parse_u_list(args.u)]
    entries = []
    for u, rep in results:
        d = decision_doc(rep)
        entries.append({"u": format_exact(u), **d})
    doc = {
        "schema_version": "1",
        "command": "ifs",
        "input": {
            "points": [exact_list(p) for p in ifs.points],
            "sweep": args.sweep,
            "u": None if args.u is None else [format_exact(u) for u in _parse_u_list(args.u)],
            "nmax": args.nmax,
            "kmax": args.kmax,
        },
        "results": entries,
        "positive_u": [e["u"] for e in entries if e["verdict"] == Verdict.POSITIVE.value],
    }
    _emit(doc, args.json, started)
    return 0


def cmd_search(args) -> int:
    started = time.perf_counter()
    try:
        found = counterexample_search(args.size, args.bound, args.nmax, args.kmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "schema_version": "1",
        "command": "search",
        "input": {"size": args.size, "bound": args.bound, "nmax": args.nmax, "kmax": args.kmax},
        "results": [exact_list(s.digits) for s in found],
    }
    _emit(doc, args.json, started)
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.report) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"verify: cannot read {args.report}: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        problems = verify_document(doc)
    except (ReportError, KeyError, TypeError, ValueError) as exc:
        print(f"verify: rejected: malformed report ({exc})")
        return 1
    if problems:
        for p in problems:
            print(f"verify: rejected: {p}")
        return 1
    print(f"verify: accepted ({doc['verdict']} via {doc['fired_condition']})")
    return 0


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="selfsim", description="Exact measure decisions for self-similar digit sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="decide positive measure of E(sigma, 1/|sigma|)")
    p.add_argument("--sigma", required=True, help="digit list, e.g. 0,1,8,9 or 0,1,sqrt(2)")
    p.add_argument("--nmax", type=_positive, default=8)
    p.add_argument("--kmax", type=_positive, default=None)
    p.add_argument("--levels", type=_levels, default=None, help="N for levels 1..N, or a list")
    p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("render", help="draw level covers as SVG and CSV")
    p.add_argument("--sigma", required=True)
    p.add_argument("--q", type=_fraction, default=None, help="ratio a/b; default 1/|sigma|")
    p.add_argument("--levels", type=_levels, required=True)
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--limit", type=_positive, default=ENUMERATION_LIMIT,
                   help="candidate budget per level")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("multigeo", help="classify a multigeometric achievement set")
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--nmax", type=_positive, default=8)
    p.add_argument("--kmax", type=_positive, default=None)
    p.add_argument("--limit", type=_positive, default=1 << 20)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_multigeo)

    p = sub.add_parser("ifs", help="decide projections x + u*y of a planar IFS")
    p.add_argument("--points", required=True, help="a1,b1:a2,b2:...")
    p.add_argument("--sweep", type=_positive, default=None, help="Stern-Brocot height")
    p.add_argument("--u", default=None, help="explicit parameters, e.g. 1,1/2,sqrt(2)")
    p.add_argument("--nmax", type=_positive, default=8)
    p.add_argument("--kmax", type=_positive, default=None)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_ifs)

    p = sub.add_parser("search", help="non-residue-complete digit sets that look positive")
    p.add_argument("--size", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--nmax", type=_positive, default=6)
    p.add_argument("--kmax", type=_positive, default=None)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="recompute and check a decide report")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"selfsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"selfsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
