"""Command-line front end (``nsgraph``).

Hypernodes are written as node templates in ``n``: ``x(n)``, ``p(n//2,0)``,
``X(2*n+1)``.  A template without ``n`` denotes a standard hypernode.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import UnknownBuiltin, builtin, builtin_names
from .exprs import ExprError, compile_expr, evaluate, names, split_call
from .filters import FilterVerdict, OracleConfigError, UltrafilterOracle
from .galaxies0 import (Answer, ChainDefect, Closeness, GalaxyHandle, chain_thm42, classify_galaxies,
                        koenig_witness, limitedly_distant, partial_order_check)
from .galaxies1 import (chain_thm112, classify_one_galaxies, classify_zero_galaxies, closer_than_1,
                        one_limitedly_distant, partial_order_check_1, thm103_witness, zero_limitedly_distant)
from .graphone import OneGraphPresentation, geodesic, wdistance
from .graphzero import (GraphError, InvalidNode, NodeRef, PreconditionError, Unresolved,
                        UnsupportedOperation, distance, load_graph, parse_node)
from .ordinals import Ordinal, format_ordinal
from .suite import run_examples
from .ultrapower import Hypernode, hyperdistance

EXIT_OK, EXIT_UNDETERMINED, EXIT_USAGE, EXIT_PRECONDITION, EXIT_DEFECT = 0, 2, 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def parse_hypernode(g, text: str) -> Hypernode:
    fam, args = split_call(text.strip().strip("[]"))
    exprs = [compile_expr(a) for a in args]
    for e in exprs:
        extra = names(e) - {"n"}
        if extra:
            raise ExprError(f"unknown names {sorted(extra)} in {text!r}")
    return Hypernode.of(g, lambda n: NodeRef(fam, tuple(evaluate(e, {"n": n}) for e in exprs)))


def _node(text: str) -> NodeRef:
    try:
        return parse_node(text)
    except GraphError as e:
        raise UsageError(str(e)) from None


def _graph(args):
    if args.graph and args.builtin:
        raise UsageError("give either --builtin or --graph, not both")
    if args.graph:
        return load_graph(args.graph)
    if args.builtin:
        return builtin(args.builtin)
    raise UsageError("a graph is required: --builtin=<name> or --graph=<file>")


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, Ordinal):
        return format_ordinal(v)
    return str(v)


class Outcome:
    """What a command produced: a payload, a text rendering and whether anything was undetermined."""

    def __init__(self, payload, text: str, undetermined: bool = False):
        self.payload, self.text, self.undetermined = payload, text, undetermined


def cmd_dist(g, args):
    if isinstance(g, OneGraphPresentation):
        raise PreconditionError("dist works on 0-graphs; use wdist for 1-graphs")
    x, y = _node(args.x), _node(args.y)
    d = distance(g, x, y, args.budget)
    return Outcome({"x": str(x), "y": str(y), "distance": _fmt(d)}, _fmt(d), isinstance(d, Unresolved))


def cmd_wdist(g, args):
    x, y = _node(args.x), _node(args.y)
    if not isinstance(g, OneGraphPresentation):
        d = distance(g, x, y, args.budget)
        d = Ordinal(0, d) if isinstance(d, int) else d
        return Outcome({"x": str(x), "y": str(y), "wdistance": _fmt(d)}, _fmt(d), isinstance(d, Unresolved))
    d = wdistance(g, x, y, args.budget)
    payload = {"x": str(x), "y": str(y), "wdistance": _fmt(d)}
    text = _fmt(d)
    if isinstance(d, Ordinal) and args.walk:
        sk = geodesic(g, x, y, args.budget)
        payload["walk"] = str(sk)
        text += f"\n{sk}"
    return Outcome(payload, text, isinstance(d, Unresolved))


def cmd_hyperdist(g, args):
    a, b = parse_hypernode(g, args.a), parse_hypernode(g, args.b)
    d = hyperdistance(a, b, args.budget)
    if isinstance(g, OneGraphPresentation):
        lims = {"limited": zero_limitedly_distant(a, b, args.oracle),
                "one_limited": one_limitedly_distant(a, b, args.oracle)}
    else:
        lims = {"limited": limitedly_distant(a, b, args.oracle)}
    payload = {"a": a.describe(), "b": b.describe(), "hyperdistance": d.describe(),
               "first": [_fmt(v) for v in d.values(8)]}
    payload.update({k: str(v) for k, v in lims.items()})
    lines = [f"[{d.describe()}]", "first terms: " + ", ".join(payload["first"])]
    lines += [f"{k}: {v}" for k, v in lims.items()]
    return Outcome(payload, "\n".join(lines), any(v.answer is Answer.UNDETERMINED for v in lims.values()))


def cmd_classify(g, args):
    hs = [parse_hypernode(g, t) for t in args.hypernodes]
    payload = {"hypernodes": [h.describe() for h in hs]}
    lines = []
    if isinstance(g, OneGraphPresentation):
        parts = [classify_zero_galaxies(hs, args.oracle), classify_one_galaxies(hs, args.oracle)]
    else:
        parts = [classify_galaxies(hs, args.oracle)]
        handles = [GalaxyHandle.of(h, args.oracle) for h in hs]
        payload["kinds"] = [h.kind for h in handles]
        lines += [f"{h.representative}: {h.kind}" for h in handles]
    undetermined = False
    for p in parts:
        payload[p.level] = p.to_json()
        lines.append(f"{p.level} classes: {p.classes}")
        if p.unresolved:
            undetermined = True
            lines.append(f"{p.level} unresolved pairs: {p.unresolved}")
    if "kinds" in payload and "undetermined" in payload["kinds"]:
        undetermined = True
    return Outcome(payload, "\n".join(lines), undetermined)


def _chain(g, args):
    rank1 = isinstance(g, OneGraphPresentation)
    if args.x:
        x = parse_hypernode(g, args.x)
    elif not rank1:
        x = Hypernode.const(g, g.base)
    else:
        raise UsageError("rank-1 chains need an explicit standard x")
    if args.v:
        v = parse_hypernode(g, args.v)
    else:
        x0 = x.standard_node(args.oracle)
        if x0 is None:
            raise PreconditionError(f"{x} is not standard")
        v = thm103_witness(g, x0) if rank1 else koenig_witness(g, x0)
    if rank1:
        chain = chain_thm112(g, x, v, args.depth, args.oracle, args.m_max, strict=False)
        order = partial_order_check_1(chain.handles, x, args.oracle, args.m_max)
    else:
        chain = chain_thm42(g, x, v, args.depth, args.oracle, args.m_max, strict=False)
        order = partial_order_check(chain.handles, x, args.oracle, args.m_max)
    if not chain.ok:
        raise ChainDefect("constructed chain failed validation: " + json.dumps(chain.to_json()))
    return chain, order


def cmd_chain(g, args):
    chain, _ = _chain(g, args)
    lines = [f"{i - args.depth:+d}  {h.representative}  ({h.evidence.get('profile', '')})"
             for i, h in enumerate(chain.handles)]
    return Outcome(chain.to_json(), "\n".join(lines))


def cmd_report(g, args):
    chain, order = _chain(g, args)
    payload = {"chain": chain.to_json(), "order": order.to_json()}
    lines = [f"chain ok: {chain.ok}", f"partial order ok: {order.ok}"]
    for i, r in enumerate(chain.adjacent):
        ins = sum(w is FilterVerdict.IN for _, w in r.witnesses)
        lines.append(f"handle {i} vs {i + 1}: {r.answer.value} ({ins}/{len(r.witnesses)} witnesses in the filter)")
    if order.incomparable:
        lines.append(f"incomparable: {order.incomparable}")
    undetermined = any(r.answer is Closeness.UNDETERMINED for r in chain.adjacent)
    if not order.ok:
        raise ChainDefect("partial order violations: " + "; ".join(order.violations))
    return Outcome(payload, "\n".join(lines), undetermined)


def cmd_verify(g, args):
    checks = run_examples()
    width = max(len(c.example) for c in checks)
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.example:<{width}}  {c.claim}" + (f"  [{c.detail}]" if c.detail and not c.ok else "")
             for c in checks]
    failed = sum(not c.ok for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    out = Outcome([c.to_json() for c in checks], "\n".join(lines))
    out.failed = failed
    return out


def cmd_export(g, args):
    g = builtin(args.name)
    data = g.to_json()
    text = json.dumps(data, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        return Outcome({"written": args.output}, f"wrote {args.output}")
    return Outcome(data, text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--builtin", choices=builtin_names(), help="use a builtin presentation")
    common.add_argument("--graph", help="load a presentation from a JSON file")
    common.add_argument("--oracle", default="frechet", help="ultrafilter oracle: frechet or residues=m:r,...")
    common.add_argument("--budget", type=int, default=64, help="search budget (BFS radius)")
    common.add_argument("--depth", type=int, default=3, help="chain depth")
    common.add_argument("--m-max", type=int, default=32, help="closeness witnesses checked")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="exit 2 on undetermined verdicts")

    p = _Parser(prog="nsgraph", description="Distances and galaxies of nonstandard graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("dist", parents=[common], help="distance between two 0-nodes")
    s.add_argument("x")
    s.add_argument("y")
    s.set_defaults(run=cmd_dist)
    s = sub.add_parser("wdist", parents=[common], help="ordinal wdistance in a 1-graph")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--walk", action="store_true", help="also print a geodesic walk")
    s.set_defaults(run=cmd_wdist)
    s = sub.add_parser("hyperdist", parents=[common], help="hyperdistance of two hypernodes")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_hyperdist)
    s = sub.add_parser("classify", parents=[common], help="group hypernodes into galaxies")
    s.add_argument("hypernodes", nargs="+")
    s.set_defaults(run=cmd_classify)
    for name, fn, text in (("chain", cmd_chain, "galaxies ordered by closeness"),
                           ("report", cmd_report, "chain with witness tables and order check")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--x", help="standard base hypernode (default: the base node)")
        s.add_argument("--v", help="hypernode outside the principal galaxy (default: a König witness)")
        s.set_defaults(run=fn)
    s = sub.add_parser("verify-examples", parents=[common], help="run the worked examples")
    s.set_defaults(run=cmd_verify, needs_graph=False)
    s = sub.add_parser("export-builtin", parents=[common], help="write a builtin presentation as JSON")
    s.add_argument("name", choices=builtin_names())
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_export, needs_graph=False)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code
    try:
        args.oracle = UltrafilterOracle.parse(args.oracle)
        g = _graph(args) if getattr(args, "needs_graph", True) else None
        out = args.run(g, args)
    except (UsageError, ExprError, OracleConfigError, UnknownBuiltin, json.JSONDecodeError) as e:
        print(f"nsgraph: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ChainDefect as e:
        print(f"nsgraph: defect: {e}", file=sys.stderr)
        return EXIT_DEFECT
    except (PreconditionError, InvalidNode, UnsupportedOperation, GraphError, OSError) as e:
        print(f"nsgraph: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(json.dumps(out.payload, indent=2, default=str))
    else:
        print(out.text)
    if getattr(out, "failed", 0):
        return 1
    if args.strict and out.undetermined:
        return EXIT_UNDETERMINED
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
