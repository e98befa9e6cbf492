"""``qrr`` command line: check identity files, run the catalogue, expand and dissect expressions."""

from __future__ import annotations

import argparse
import json
import sys

from ..dissect import dissect
from .catalogue import ALIASES, DEFAULT_ORDER, ENTRIES, run_catalogue
from .evaluator import Evaluator
from .parser import QidError, parse_expr
from .report import check_source

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _exit_code(reports) -> int:
    if any(r.status == "error" for r in reports):
        return EXIT_ERROR
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    return EXIT_PASS


def _emit_reports(reports, as_json: bool) -> None:
    if as_json:
        json.dump([r.to_dict() for r in reports], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for r in reports:
            print(r.summary())
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} passed")


def cmd_check(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"qrr: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        reports = check_source(text, args.order, label=args.file)
    except QidError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit_reports(reports, args.json)
    return _exit_code(reports)


def cmd_catalogue(args) -> int:
    only = None
    if args.only:
        only = [s.strip() for s in args.only.split(",") if s.strip()]
        known = {e.id for e in ENTRIES} | set(ALIASES)
        unknown = [i for i in only if i not in known]
        if unknown:
            print(f"qrr: unknown catalogue ids: {', '.join(unknown)}", file=sys.stderr)
    reports = run_catalogue(args.order, only, jobs=args.jobs)
    _emit_reports(reports, args.json)
    return _exit_code(reports)


def _terms(series) -> list:
    return [[k, c] for k, c in series.terms()]


def _evaluate(text: str, order: int):
    return Evaluator().evaluate(parse_expr(text), order)


def cmd_expand(args) -> int:
    try:
        s = _evaluate(args.expr, args.order)
    except QidError as exc:
        print(f"qrr: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps({"order": s.order, "terms": _terms(s)}))
    else:
        for k, c in s.terms():
            print(f"{k}:{c}")
    return EXIT_PASS


def cmd_dissect(args) -> int:
    if args.mod < 1:
        print("qrr: --mod must be positive", file=sys.stderr)
        return EXIT_ERROR
    try:
        s = _evaluate(args.expr, args.order)
    except QidError as exc:
        print(f"qrr: {exc}", file=sys.stderr)
        return EXIT_ERROR
    d = dissect(s, args.mod)
    if args.json:
        parts = [{"residue": r, "order": p.order, "terms": _terms(p)} for r, p in enumerate(d.parts)]
        print(json.dumps({"modulus": d.m, "source_order": d.source_order, "parts": parts}))
    else:
        for r, p in enumerate(d.parts):
            body = " ".join(f"{k}:{c}" for k, c in p.terms()) or "0"
            print(f"r={r} (order {p.order}): {body}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check every assertion in an identity file")
    p.add_argument("file")
    p.add_argument("--order", type=int, default=None, help="override each assertion's @order")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("catalogue", help="run the built-in identity catalogue")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--only", default=None, help="comma-separated catalogue ids")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalogue)

    p = sub.add_parser("expand", help="print exponent:coefficient pairs of an expression")
    p.add_argument("expr")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("dissect", help="split an expression by exponent residue")
    p.add_argument("expr")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dissect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 1:
        print("qrr: --order must be positive", file=sys.stderr)
        return EXIT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
