"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import trees as tr
from .algebra import AlgebraElement, element_to_json_obj, format_element, format_latex, parse_generator
from .antipodes import AGREEING, antipode
from .checks import SUITES, run_suite
from .series import NCSeries, first_disagreement, left_inverse, right_inverse
from .words import check_word, parse_word

SAFETY_CAP = 6


class UsageError(Exception):
    pass


def _emit_element(a: AlgebraElement, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(element_to_json_obj(a))
    if fmt == "latex":
        return format_latex(a)
    return format_element(a)


def cmd_antipode(args) -> int:
    try:
        g = parse_generator(args.literal)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n = args.n or g.max_color()
    if g.max_color() > n:
        raise UsageError(f"generator {args.literal} uses colors beyond --n {n}")
    if not args.all:
        print(_emit_element(antipode(g, args.algorithm, n), args.format))
        return 0
    results = {name: antipode(g, name, n) for name in AGREEING}
    reference = results["recursive"]
    equal = sum(1 for r in results.values() if r == reference)
    if args.format == "json":
        print(json.dumps({"results": {k: element_to_json_obj(v) for k, v in results.items()},
                          "equal": equal, "total": len(results)}))
    else:
        for name, value in results.items():
            print(f"{name}: {_emit_element(value, args.format)}")
        print(f"{equal}/{len(results)} equal")
    return 0 if equal == len(results) else 1


def _tree_word(args) -> tuple[tuple[int, ...], int, int]:
    try:
        u = parse_word(args.word)
        root = int(args.root)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not u:
        raise UsageError("leaf word must be nonempty")
    n = args.n or max(max(u), root)
    try:
        check_word(u, n)
        check_word((root,), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return u, root, n


def cmd_trees(args) -> int:
    u, root, n = _tree_word(args)
    if args.action == "census":
        counts = {cls: len(tr.enumerate_trees(u, root, cls, n)) for cls in tr.TREE_CLASSES}
        if args.format == "json":
            print(json.dumps(counts))
        else:
            print("  ".join(f"{cls}={counts[cls]}" for cls in tr.TREE_CLASSES))
        return 0
    found = tr.enumerate_trees(u, root, args.tree_class, n)
    if args.action == "count":
        print(json.dumps({"count": len(found)}) if args.format == "json" else len(found))
        return 0
    if args.format == "json":
        print(json.dumps([tr.to_json_obj(t) for t in found]))
    else:
        for t in found:
            print(tr.to_text(t))
    return 0


def cmd_verify(args) -> int:
    if args.max_leaves < 2:
        raise UsageError("--max-leaves must be at least 2")
    if args.max_leaves > SAFETY_CAP and not args.force:
        raise UsageError(f"--max-leaves above {SAFETY_CAP} needs --force")
    n = args.n or 1
    report = run_suite(args.suite, args.max_leaves, n, args.seed)
    if args.format == "json":
        print(json.dumps({"suite": report.suite, "ok": report.ok,
                          "checks": [{"name": l.name, "checked": l.checked,
                                      "failures": l.failures} for l in report.lines]}))
    else:
        print(report.render())
    return 0 if report.ok else 1


def _load_series(args) -> NCSeries:
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        obj = json.loads(text)
        f = NCSeries.from_json_obj(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read series: {exc}") from exc
    if args.n and args.n != f.n:
        raise UsageError(f"series has n={f.n}, --n says {args.n}")
    if args.order:
        kept = {k: c for k, c in f.coeffs.items() if len(k[1]) <= args.order}
        f = NCSeries(f.n, args.order, kept)
    return f


def _emit_series(f: NCSeries, fmt: str) -> str:
    return json.dumps(f.to_json_obj()) if fmt == "json" else str(f)


def cmd_invert(args) -> int:
    f = _load_series(args)
    if args.side == "left":
        print(_emit_series(left_inverse(f), args.format))
        return 0
    if args.side == "right":
        print(_emit_series(right_inverse(f), args.format))
        return 0
    left, right = left_inverse(f), right_inverse(f)
    k = first_disagreement(left, right)
    verdict = f"first disagreement at order {k}" if k else f"identical through order {f.order}"
    if args.format == "json":
        print(json.dumps({"left": left.to_json_obj(), "right": right.to_json_obj(),
                          "first_disagreement": k, "verdict": verdict}))
    else:
        print("left inverse:")
        print(str(left))
        print("right inverse:")
        print(str(right))
        print(verdict)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="number of colors (default: largest color used)")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--order", type=int, default=None, help="series truncation order")

    parser = argparse.ArgumentParser(prog="intervalhopf",
                                     description="Interval Hopf algebra antipodes, trees and series inversion.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("antipode", parents=[common], help="antipode of a generator Y^i_u")
    p.add_argument("literal")
    p.add_argument("--algorithm", default="recursive",
                   choices=("geometric", "recursive", "breadth", "ost", "reduced-h", "reduced-l", "reduced-r"))
    p.add_argument("--all", action="store_true", help="run every interval-algebra route and compare")
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("trees", parents=[common], help="enumerate colored trees")
    p.add_argument("word")
    p.add_argument("root")
    p.add_argument("action", choices=("count", "list", "census"))
    p.add_argument("--class", dest="tree_class", choices=tr.TREE_CLASSES, default="layered")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("verify", parents=[common], help="run an exhaustive identity suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-leaves", type=int, default=4)
    p.add_argument("--force", action="store_true", help=f"allow --max-leaves above {SAFETY_CAP}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invert", parents=[common], help="left/right substitutional inverses")
    p.add_argument("file", help="series JSON file, or - for stdin")
    p.add_argument("--side", choices=("left", "right", "both"), default="both")
    p.set_defaults(func=cmd_invert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n is not None and args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return 2
    if args.order is not None and args.order < 1:
        print("error: --order must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
