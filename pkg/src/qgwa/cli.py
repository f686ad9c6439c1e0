"""Command line entry point: ``qgwa analyze FILE [FILE ...]``.

Exit status: 0 success, 2 hypothesis violation, 3 parse error,
4 failed cross-check or verification.  With several files the largest
status wins.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .analysis import EXIT_PARSE, emit_report, run_analysis
from .errors import ParseError, SemanticError
from .request import parse_request


def _build_parser():
    p = argparse.ArgumentParser(prog="qgwa", description="Fixed rings of quantum GWAs.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze one or more input documents")
    a.add_argument("files", nargs="+", metavar="FILE")
    a.add_argument("--verify", action="store_true", help="brute-force check of the fixed ring")
    a.add_argument("--probe", action="store_true", help="search for minimal fixed generators")
    a.add_argument("--format", choices=("json", "text"), default="json")
    a.add_argument("--grade-bound", type=int, default=None)
    a.add_argument("--h-bound", type=int, default=None)
    a.add_argument("--k-bound", type=int, default=None)
    a.add_argument("--jobs", type=int, default=1, help="files processed in parallel")
    return p


def _apply_flags(req, args):
    o = req.options
    changes = {}
    if args.verify:
        changes["verify"] = True
    if args.probe:
        changes["probe"] = True
    if args.grade_bound is not None:
        changes["grade_bound"] = args.grade_bound
    if args.h_bound is not None:
        changes["h_degree_bound"] = args.h_bound
    if args.k_bound is not None:
        changes["k_bound"] = args.k_bound
    return replace(req, options=replace(o, **changes)) if changes else req


def analyze_file(path, args):
    """Return (exit code, rendered output) for one input file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return EXIT_PARSE, f"{path}: {exc.strerror}\n"
    try:
        req = parse_request(text)
    except (ParseError, SemanticError) as exc:
        if args.format == "json":
            body = {"file": path, "error": type(exc).__name__, "message": str(exc),
                    "line": exc.line, "column": exc.column,
                    "expected": list(getattr(exc, "expected", ()) or ())}
            return EXIT_PARSE, json.dumps(body, indent=2) + "\n"
        return EXIT_PARSE, f"{path}: {type(exc).__name__}: {exc}\n"
    report = run_analysis(_apply_flags(req, args))
    return report.exit_code, emit_report(report, args.format)


def _worker(item):
    path, args = item
    return analyze_file(path, args)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    items = [(f, args) for f in args.files]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_worker, items))
    else:
        results = [_worker(it) for it in items]
    code = 0
    for (path, _), (status, out) in zip(items, results):
        if len(items) > 1:
            sys.stdout.write(f"# {path}\n")
        sys.stdout.write(out)
        code = max(code, status)
    return code


if __name__ == "__main__":
    sys.exit(main())
