"""Command line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dsl
from .coeffs import Poly
from .enumeration import count_table, enumerate_contracted
from .expr import TautExpr, normalize
from .graphs import GraphError
from .props import run_all
from .relations import (
    ConstraintError,
    RWQuery,
    relation_components,
    report_json,
    report_table,
    rw_power,
    rw_relation,
    symbolic_m,
    verify_paper_identities,
)


class UsageError(Exception):
    pass


def _genus(text: str):
    if text == "sym":
        return None
    try:
        g = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--g takes an integer >= 2 or 'sym', got {text!r}")
    if g < 2:
        raise argparse.ArgumentTypeError(f"genus must be >= 2, got {g}")
    return g


def expr_to_json(A: TautExpr) -> dict:
    return {
        "r": A.r,
        "terms": [{"graph": G.to_json_obj(), "coeff": str(c)} for _, G, c in A.terms()],
    }


def expr_to_dot(A: TautExpr) -> str:
    blocks = []
    for i, (_, G, c) in enumerate(A.terms()):
        blocks.append(f"// coefficient: {c}\n" + G.to_dot(f"term{i}"))
    return "\n".join(blocks)


def _emit_expr(A: TautExpr, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(expr_to_json(A), indent=2)
    if fmt == "dot":
        return expr_to_dot(A)
    return dsl.render_expr(A)


# subcommands -------------------------------------------------------------------------------


def cmd_eval(args) -> int:
    text = args.expression
    if text is None or text == "-":
        text = sys.stdin.read()
    A = dsl.evaluate(text, genus=args.g)
    if not args.raw:
        A = normalize(A)
    print(_emit_expr(A, args.format))
    return 0


def cmd_enumerate(args) -> int:
    graphs = enumerate_contracted(args.r, args.d)
    if args.format == "json":
        print(json.dumps([G.to_json_obj() for G in graphs], indent=2))
    elif args.format == "dot":
        print("\n".join(G.to_dot(f"graph{i}") for i, G in enumerate(graphs)))
    else:
        print(f"# contracted {args.r}-marked graphs of degree {2 * args.d}: {len(graphs)}")
        for i, G in enumerate(graphs, 1):
            print(f"{i:4d}  u={G.u}  e={G.num_edges}  {dsl.render_graph(G)}")
    return 0


def cmd_count(args) -> int:
    table = count_table(args.r_max, args.d_max)
    if args.format == "json":
        print(json.dumps({"r_max": args.r_max, "d_max": args.d_max, "counts": table}))
        return 0
    header = "r\\d " + "".join(f"{d:>8d}" for d in range(args.d_max + 1))
    print(header)
    for r, row in enumerate(table):
        print(f"{r:<4d}" + "".join(f"{c:>8d}" for c in row))
    return 0


def cmd_verify(args) -> int:
    if args.suite == "paper":
        checks = verify_paper_identities()
        print(report_json(checks) if args.format == "json" else report_table(checks))
        return 0 if all(c.passed for c in checks) else 1
    results = run_all(args.seed, args.cases)
    if args.format == "json":
        print(json.dumps([r.as_dict() for r in results], indent=2))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.name}  ({r.cases} cases, {r.failures} failures)"
            if r.example:
                line += f"\n      first failure: {r.example}"
            print(line)
    return 0 if all(r.passed for r in results) else 1


def _parse_scalar(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return dsl.parse_poly(text)


def cmd_relations(args) -> int:
    if args.m == "sym":
        if args.r is None:
            raise UsageError("--m sym needs --r")
        m = symbolic_m(args.r)
    else:
        m = tuple(_parse_scalar(x) for x in args.m.split(",")) if args.m else ()
        if args.r is not None and args.r != len(m):
            raise UsageError(f"--r {args.r} disagrees with {len(m)} entries in --m")
    n = "n" if args.n == "sym" else _parse_scalar(args.n)
    if args.g is None:
        raise UsageError("relations need a numeric --g (the exponent is g+1)")
    q = RWQuery(args.g, m, n, forget_to=args.target_r)
    A = rw_power(q) if args.no_normalize else rw_relation(q)
    if args.split and not q.is_numeric():
        parts = relation_components(A, q.r)
        if args.format == "json":
            out = [{"monomial": str(Poly({mono: 1})), **expr_to_json(E)} for mono, E in sorted(parts.items())]
            print(json.dumps(out, indent=2))
        else:
            for mono, E in sorted(parts.items()):
                print(f"[{Poly({mono: 1})}]  {dsl.render_expr(E)}")
        return 0
    print(_emit_expr(A, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tautforms", description="Tautological forms via marked graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a DSL expression and print its normal form")
    e.add_argument("expression", nargs="?", help="expression text; '-' or omitted reads stdin")
    e.add_argument("--g", type=_genus, default=None, help="integer genus >= 2 or 'sym' (default)")
    e.add_argument("--format", choices=["text", "json", "dot"], default="text")
    e.add_argument("--raw", action="store_true", help="skip normalization")
    e.set_defaults(func=cmd_eval)

    en = sub.add_parser("enumerate", help="list contracted r-marked graphs of degree 2d")
    en.add_argument("--r", type=int, required=True)
    en.add_argument("--d", type=int, required=True)
    en.add_argument("--format", choices=["table", "json", "dot"], default="table")
    en.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("count", help="count table of contracted graphs over an r x d grid")
    c.add_argument("--r-max", type=int, default=5)
    c.add_argument("--d-max", type=int, default=2)
    c.add_argument("--format", choices=["table", "json"], default="table")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="run the identity suite or the randomized property suite")
    v.add_argument("--suite", choices=["paper", "props"], default="paper")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=1000)
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    rl = sub.add_parser("relations", help="relations from the (g+1)-st power of the normal-function form")
    rl.add_argument("--g", type=_genus, required=True)
    rl.add_argument("--m", default="", help="comma-separated integers, or 'sym' for m1..mr")
    rl.add_argument("--r", type=int, default=None, help="number of marks when --m sym")
    rl.add_argument("--n", default="0", help="integer or 'sym'")
    rl.add_argument("--target-r", type=int, default=None, help="marks kept after integration")
    rl.add_argument("--split", action="store_true", help="one relation per monomial in m, n")
    rl.add_argument("--no-normalize", action="store_true", help="print the expanded power only")
    rl.add_argument("--format", choices=["text", "json", "dot"], default="text")
    rl.set_defaults(func=cmd_relations)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, dsl.DslError, GraphError, ConstraintError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
