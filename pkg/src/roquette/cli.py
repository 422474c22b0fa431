"""Command-line front end.

    roquette decompose "D8 ^ 2" --raw
    roquette basis Q8
    roquette tensor D16 Q8
    roquette eval dade-torsion "SD32 ^* 2"
    roquette verify diamond-table

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 order bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import functors as F
from .decompose import decompose, faithful_part
from .edges import EdgeSum, tensor
from .errors import GroupTooLarge, RoquetteError
from .expr import as_expr, build
from .genetic import genetic_basis
from .suites import SUITES

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_TOO_LARGE = 0, 1, 2, 3

FUNCTORS = ("rq-rank", "faithful-count", "dade-torsion", "bx-rank", "center-signature")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="roquette", description="Edge decompositions of p-groups.")
    parser.add_argument("--max-order", type=int, default=None,
                        help="bound on concrete group orders (default 512, or ROQUETTE_MAX_ORDER)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", help="symbolic edge decomposition of an expression")
    p.add_argument("expr")
    p.add_argument("--raw", action="store_true", help="keep ∂C2 terms instead of merging them into 1")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("basis", help="brute-force genetic basis of a concrete group")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("tensor", help="product of two decompositions")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--raw", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="evaluate a functor on an expression")
    p.add_argument("functor", help=f"one of {', '.join(FUNCTORS)} or a registered table")
    p.add_argument("expr")
    p.add_argument("--table", metavar="FILE",
                   help='JSON table to register first: {"name", "base"?, "entries": [...]}')
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run a cross-check suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--quiet", action="store_true", help="only print failures and the summary")
    return parser


def _emit_sum(x: EdgeSum, as_json: bool) -> None:
    print(x.to_json() if as_json else str(x))


def _histogram_text(hist) -> str:
    return "{" + ", ".join(f"{t.name}:{k}" for t, k in sorted(hist.items())) + "}"


def cmd_decompose(args) -> int:
    _emit_sum(decompose(args.expr, raw=args.raw), args.json)
    return EXIT_OK


def cmd_tensor(args) -> int:
    left, right = decompose(args.expr1, raw=True), decompose(args.expr2, raw=True)
    _emit_sum(tensor(left, right, raw=args.raw), args.json)
    return EXIT_OK


def cmd_basis(args) -> int:
    group = build(args.expr, max_order=args.max_order)
    basis = genetic_basis(group, max_order=args.max_order)
    hist = basis.histogram()
    uniqueness = {True: "unique basis", False: "basis not unique", None: "uniqueness unknown"}
    if args.json:
        print(json.dumps({
            "classes": len(basis),
            "histogram": {t.tag: k for t, k in sorted(hist.items())},
            "unique": basis.unique,
            "records": [{"order": r.s.order, "quotient_type": r.quotient_type.tag,
                         "central_trivial": r.central_trivial} for r in basis.records],
            "edges": basis.edges().to_dict(),
        }))
        return EXIT_OK
    print(f"{len(basis)} classes: {_histogram_text(hist)}, {uniqueness[basis.unique]}")
    print(f"faithful edges: {basis.faithful_edges()}")
    return EXIT_OK


def _eval_value(name: str, expr) -> object:
    if name == "rq-rank":
        return F.rq_rank(decompose(expr))
    if name == "faithful-count":
        return F.faithful_count(faithful_part(expr))
    if name == "dade-torsion":
        return F.dade_torsion(decompose(expr, raw=True))
    if name == "bx-rank":
        return F.burnside_units_rank(decompose(expr, raw=True))
    if name == "center-signature":
        return F.center_signature(decompose(expr, raw=True))
    return F.evaluate(F.get_table(name), decompose(expr, raw=True))


def cmd_eval(args) -> int:
    if args.table:
        with open(args.table) as fh:
            data = json.load(fh)
        F.register_table(data["name"], data["entries"], base=data.get("base"),
                         scope_note=data.get("scope_note", "user extension"))
    expr = as_expr(args.expr)
    value = _eval_value(args.functor, expr)
    if args.json:
        if isinstance(value, (F.AbelianSignature, F.Partial)):
            payload = value.to_dict()
        elif isinstance(value, dict):
            payload = {str(d): k for d, k in sorted(value.items())}
        else:
            payload = value
        print(json.dumps({"functor": args.functor, "value": payload}))
    elif args.functor == "center-signature":
        print(F.format_degrees(value))
    else:
        print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {}
    if args.max_order is not None and args.suite in ("diamond-table", "oracle-families"):
        kwargs["max_order"] = args.max_order
    failures = total = 0
    for case in suite(**kwargs):
        total += 1
        if case.ok:
            if not args.quiet:
                print(f"PASS {case.name}")
        else:
            failures += 1
            print(f"FAIL {case.name}: {case.detail}")
    print(f"{args.suite}: {total - failures}/{total} passed")
    return EXIT_FAILED if failures else EXIT_OK


COMMANDS = {"decompose": cmd_decompose, "basis": cmd_basis, "tensor": cmd_tensor,
            "eval": cmd_eval, "verify": cmd_verify}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (RoquetteError, OSError, json.JSONDecodeError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
