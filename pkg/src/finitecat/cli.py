"""Command-line front end.

Exit status: 0 on success (including answers like "false"), 1 on bad input
or a violated precondition, 2 when a budget ran out; in that case whatever
bounds were obtained are still printed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import compatibility as cs
from .budget import Budget, default_budget
from .errors import BudgetExceeded, FiniteCatError
from .formats import (
    complex_to_text,
    groups_to_text,
    hypergraph_to_text,
    load_poset,
    parse_cover,
    parse_hypergraph,
    parse_label_lines,
    poset_to_dot,
    poset_to_structured,
    poset_to_text,
)
from .height_one import cat_height1, strongify
from .homotopy import core, is_contractible
from .hypergraph import covering_number, dual_hypergraph, sperner_reduction, transversal_number
from .invariants import invariant_chain_report
from .isomorphism import find_isomorphism
from .simplicial import order_complex, subdivide

EPILOG = """\
poset text format (one statement per line, '#' starts a comment):
  y1 < x1
  y2 < x1 > y1        chains of < and > are fine
  lonely              a bare label declares an isolated point
structured format (.yaml/.yml/.json, or --format structured):
  {"elements": ["a", "b"], "relations": [["a", "b"]], "relations_are_covers": true}
hypergraph and cover files: one group per line, labels separated by commas.
budgets: --budget N caps solver nodes; --budget max_candidates=4096,max_nodes=10000
sets any field; the FINITECAT_BUDGET variable sets the defaults the same way.

examples:
  finitecat is-contractible chain5.txt
  finitecat invariants crown.txt --json
  finitecat bound crown.txt --algo h1 --mode gcat
  finitecat strongify crown.txt --cover cover.txt --dot
"""


class _Partial(Exception):
    """Budget ran out after partial output was printed."""


def _budget(text: str | None) -> Budget:
    base = default_budget()
    if text is None:
        return base
    if text.strip().isdigit():
        return base.replace(max_nodes=int(text))
    return Budget.from_string(text, base)


def _emit(out, data) -> None:
    out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


# -- verbs ---------------------------------------------------------------------
def cmd_core(args, out) -> None:
    P = load_poset(args.input, args.format)
    res = core(P, seed=args.shuffle_seed, incremental=args.incremental)
    if args.json:
        _emit(out, {"core": list(res.core.labels), "size": res.core.n,
                    "contractible": res.is_point, "trace": res.trace_lines(P)})
        return
    if args.trace:
        for line in res.trace_lines(P):
            out.write(line + "\n")
        out.write("--\n")
    out.write(poset_to_text(res.core))


def cmd_is_contractible(args, out) -> None:
    P = load_poset(args.input, args.format)
    out.write("true\n" if is_contractible(P) else "false\n")


def cmd_invariants(args, out) -> None:
    P = load_poset(args.input, args.format)
    report = invariant_chain_report(P, _budget(args.budget))
    if args.json:
        _emit(out, report.as_json())
    else:
        rows = [("gcat", report.gcat), ("gcat_p", report.gcat_p), ("cat_u", report.cat_u)]
        if report.cat_h1 is not None:
            rows.append(("cat_h1", report.cat_h1))
        for name, est in rows:
            out.write(f"{name} = {est} ({'exact' if est.exact else 'bound'})\n")
        out.write(f"max_core = {report.max_core}\nmax_all = {report.max_all}\n")
    if not report.complete:
        raise _Partial


def _read_order(path: str) -> list[list[str]]:
    return parse_label_lines(Path(path).read_text())


def cmd_bound(args, out) -> None:
    P = load_poset(args.input, args.format)
    mode = cs.normalize_mode(args.mode)
    budget = _budget(args.budget)
    if args.algo == "u":
        rep = cs.u_algorithm(P, mode, args.k)
    elif args.algo == "d":
        rep = cs.d_algorithm(P, mode, args.k or 1)
    elif args.algo == "h1":
        ordering = None
        space = cs.Compatibility(P, mode)
        if args.order:
            ordering = [space.space.index(a) for g in _read_order(args.order) for a in g]
        elif args.shuffle_seed is not None:
            ordering = list(space.universe)
            random.Random(args.shuffle_seed).shuffle(ordering)
        rep = cs.heuristic1(P, mode, ordering, skip_one=args.skip_one)
    else:
        k = args.k or 1
        ordering = None
        space = cs.Compatibility(P, mode)
        if args.order:
            ordering = [space.space.indices(g) for g in _read_order(args.order)]
        rep = cs.heuristic2(P, mode, k, ordering, variant=args.variant, budget=budget)
    if args.json:
        _emit(out, {"size": rep.size, "kind": rep.bound_kind, "mode": rep.mode,
                    "cover": rep.labelled(), "evaluated": rep.evaluated, "ct_calls": rep.ct_calls})
        return
    out.write(f"size {rep.size} ({rep.bound_kind})\n")
    out.write(groups_to_text(rep.labelled()))


def cmd_cat(args, out) -> None:
    P = load_poset(args.input, args.format)
    if not args.height1:
        raise FiniteCatError("only the height-one category is computable; pass --height1")
    res = cat_height1(P, _budget(args.budget))
    if args.json:
        _emit(out, {"cat": {"value": res.value, "kind": "exact"}, "cover": res.generators()})
        return
    out.write(f"cat = {res.value}\n")
    out.write(groups_to_text(res.generators()))


def cmd_strongify(args, out) -> None:
    P = load_poset(args.input, args.format)
    cover = parse_cover(Path(args.cover).read_text(), P)
    res = strongify(P, cover)
    Y = res.space
    if args.dot:
        out.write(poset_to_dot(Y, "strongified"))
        return
    out.write(poset_to_text(Y))
    out.write("--\n")
    out.write(groups_to_text([[Y.label(i) for i in u.generators] for u in res.opens]))


def cmd_hypergraph(args, out) -> None:
    H = parse_hypergraph(Path(args.input).read_text())
    budget = _budget(args.budget)
    if args.action == "sperner":
        out.write(hypergraph_to_text(sperner_reduction(H)))
        return
    if args.action == "dual":
        names = [f"e{k}" for k in range(H.m)]
        out.write(hypergraph_to_text(dual_hypergraph(H, names)))
        return
    fn = covering_number if args.action == "cover" else transversal_number
    res = fn(H, budget)
    kind = "exact" if res.exact else "bound"
    if args.json:
        witness = [sorted(map(str, e)) for e in res.witness] if args.action == "cover" \
            else [str(v) for v in res.witness]
        _emit(out, {"value": res.value, "lower": res.lower, "kind": kind, "witness": witness})
    else:
        out.write(f"{args.action} = {res.value} ({kind})\n")
        if args.action == "cover":
            pos = {v: i for i, v in enumerate(H.vertices)}
            out.write(groups_to_text([[str(v) for v in sorted(e, key=pos.get)] for e in res.witness]))
        else:
            out.write(",".join(map(str, res.witness)) + "\n")
    if not res.exact:
        raise _Partial


def cmd_sd(args, out) -> None:
    P = load_poset(args.input, args.format)
    Q = subdivide(P, args.k, _budget(args.budget))
    out.write(poset_to_text(Q))


def cmd_iso(args, out) -> None:
    P = load_poset(args.input, args.format)
    Q = load_poset(args.other, args.format)
    mapping = find_isomorphism(P, Q, limit=_budget(args.budget).max_iso)
    if mapping is None:
        out.write("false\n")
        return
    out.write("true\n")
    for i in range(P.n):
        out.write(f"{P.label(i)} -> {Q.label(mapping[i])}\n")


def cmd_export(args, out) -> None:
    P = load_poset(args.input, args.format)
    if args.to == "dot":
        out.write(poset_to_dot(P))
    elif args.to == "structured":
        out.write(poset_to_structured(P))
    elif args.to == "complex":
        out.write(complex_to_text(order_complex(P)))
    else:
        out.write(poset_to_text(P))


def cmd_compat(args, out) -> None:
    P = load_poset(args.input, args.format)
    table = cs.enumerate_compatibility(P, args.mode, args.k, budget=_budget(args.budget))
    for line in table.lines():
        out.write(line + "\n")


# -- parser ------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finitecat",
        description="Homotopy cores and LS-type categories of finite posets.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default=None,
                        help="input format (default: by extension, else sniffed)")
    common.add_argument("--budget", default=None, help="node cap N, or field=value list")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("core", parents=[common], help="beat-point reduction")
    p.add_argument("input")
    p.add_argument("--trace", action="store_true", help="print one line per removed point")
    p.add_argument("--seed", dest="shuffle_seed", type=int, default=None,
                   help="randomize the removal order with this seed")
    p.add_argument("--incremental", action="store_true", help="use Hasse-diagram surgery")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("is-contractible", parents=[common], help="print true or false")
    p.add_argument("input")
    p.set_defaults(func=cmd_is_contractible)

    p = sub.add_parser("invariants", parents=[common], help="gcat, gcat_p, cat_u and the chain")
    p.add_argument("input")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("bound", parents=[common], help="greedy upper bounds")
    p.add_argument("input")
    p.add_argument("--algo", choices=("u", "d", "h1", "h2"), required=True)
    p.add_argument("--mode", default="gcat", help="gcat, gcatp, catu or cat")
    p.add_argument("--k", type=int, default=None, help="stop length (u, d) or set size (h2)")
    p.add_argument("--order", default=None, help="file giving the ordering (h1: labels; h2: sets)")
    p.add_argument("--seed", dest="shuffle_seed", type=int, default=0,
                   help="seed for a shuffled h1 order (default 0; ignored unless --shuffle)")
    p.add_argument("--shuffle", action="store_true", help="shuffle the h1 order")
    p.add_argument("--skip-one", action="store_true", help="h1: also try the point after a break")
    p.add_argument("--variant", choices=("disjoint", "covering"), default="disjoint")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("cat", parents=[common], help="exact category of a height-one space")
    p.add_argument("input")
    p.add_argument("--height1", action="store_true", required=True)
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("strongify", parents=[common], help="make a cat cover contractible")
    p.add_argument("input")
    p.add_argument("--cover", required=True, help="one member per line: maximal labels")
    p.add_argument("--dot", action="store_true", help="emit the new space as DOT")
    p.set_defaults(func=cmd_strongify)

    p = sub.add_parser("hypergraph", parents=[common], help="hypergraph tools")
    p.add_argument("action", choices=("cover", "transversal", "dual", "sperner"))
    p.add_argument("input")
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("sd", parents=[common], help="iterated subdivision")
    p.add_argument("input")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_sd)

    p = sub.add_parser("iso", parents=[common], help="order isomorphism test")
    p.add_argument("input")
    p.add_argument("other")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("export", parents=[common], help="convert formats")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dot", dest="to", action="store_const", const="dot")
    group.add_argument("--structured", dest="to", action="store_const", const="structured")
    group.add_argument("--complex", dest="to", action="store_const", const="complex",
                       help="order complex, one simplex per line")
    p.set_defaults(func=cmd_export, to="text")

    p = sub.add_parser("compat", parents=[common], help="compatibility table")
    p.add_argument("input")
    p.add_argument("--mode", default="gcat")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_compat)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "bound" and not args.shuffle:
        args.shuffle_seed = None
    try:
        args.func(args, out)
    except _Partial:
        return 2
    except BudgetExceeded as exc:
        bounds = ""
        if exc.lower is not None or exc.upper is not None:
            bounds = f" (bounds: [{exc.lower}, {exc.upper}])"
        print(f"budget exhausted: {exc}{bounds}", file=sys.stderr)
        return 2
    except (FiniteCatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
