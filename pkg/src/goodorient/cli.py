"""Command-line interface.

Exit codes: 0 positive answer, 1 negative answer (certificate on stdout),
2 usage or input error (one-line diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import generate
from .dense import Exceptional, dense_triple
from .formats import dumps, to_json, triple_from_json, triple_json
from .graph import Graph, GraphError, format_graph, read_graph
from .oracle import brute_subquartics, trees_report, triple_report
from .orient import STTriple, orient_4r4c, orient_quartic, search_triple, to_dot, triple_violation
from .quartic import BadCertificate, as_quartic, check_normal
from .sparsity import PartitionCertificate, generic_circuits, is_2T, sparsity_violation, two_spanning_trees


class UsageError(Exception):
    pass


def _not_2t_certificate(g: Graph):
    res = two_spanning_trees(g)
    if isinstance(res, PartitionCertificate):
        return res
    return sparsity_violation(g)


def cmd_check2t(args, out):
    g = read_graph(args.file)
    if g.n < 2:
        raise UsageError("need at least 2 vertices")
    if g.m == 2 * g.n - 2:
        res = two_spanning_trees(g)
        if not isinstance(res, PartitionCertificate):
            out.append(to_json(res))
            return 0
        out.append(to_json(res))
        return 1
    out.append(to_json(_not_2t_certificate(g)))
    return 1


def cmd_circuits(args, out):
    g = read_graph(args.file)
    if g.n < 2:
        raise UsageError("need at least 2 vertices")
    if not is_2T(g):
        out.append(to_json(_not_2t_certificate(g)))
        return 1
    out.append(to_json(generic_circuits(g)))
    return 0


def cmd_normal(args, out):
    q = as_quartic(read_graph(args.file))
    res = check_normal(q)
    out.append(to_json(res))
    return 1 if isinstance(res, BadCertificate) else 0


def _emit_triple(g: Graph, tr: STTriple, args, out):
    out.append(triple_json(tr))
    if getattr(args, "dot", None):
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, tr))


def cmd_orient(args, out):
    g = read_graph(args.file)
    q = as_quartic(g)
    res = orient_quartic(q, args.s, args.t)
    if isinstance(res, BadCertificate):
        out.append(to_json(res))
        return 1
    _emit_triple(g, res, args, out)
    return 0


def cmd_orient4r4c(args, out):
    g = read_graph(args.file)
    _emit_triple(g, orient_4r4c(g, args.s, args.t), args, out)
    return 0


def cmd_dense(args, out):
    g = read_graph(args.file)
    res = dense_triple(g, args.s, args.t)
    out.append(to_json(res))
    if isinstance(res, Exceptional):
        return 1
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, res.triple))
    return 0


def cmd_verify(args, out):
    g = read_graph(args.file)
    try:
        with open(args.triple, encoding="utf-8") as fh:
            tr = triple_from_json(json.load(fh))
    except json.JSONDecodeError as exc:
        raise UsageError(f"triple file is not JSON: {exc}") from None
    why = triple_violation(g, tr)
    if why is None:
        out.append({"valid": True})
        return 0
    out.append({"valid": False, "violation": why})
    return 1


def _int_params(params):
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError("family parameters must be integers") from None


def cmd_gen(args, out):
    fam, params = args.family, args.params
    if fam == "random_4r4c":
        if len(params) != 1:
            raise UsageError("random_4r4c needs N")
        g = generate.random_4r4c(_int_params(params)[0], seed=args.seed)
    elif fam == "random_min_degree":
        g = generate.random_min_degree(*_int_params(params), seed=args.seed)
    elif fam == "sum":
        if len(params) != 6:
            raise UsageError("sum needs Q_FILE R_FILE a b c d")
        q, r = read_graph(params[0]), read_graph(params[1])
        g = generate.sum_graph(q, r, *_int_params(params[2:]))
    elif fam in ("nogoodor_hub", "nogoodor_ring"):
        if len(params) != 1:
            raise UsageError(f"{fam} needs Q_FILE")
        g = getattr(generate, fam)(read_graph(params[0]))
    else:
        g = generate.named(fam, *_int_params(params))
    text = format_graph(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.append(text)
    return 0


def cmd_oracle(args, out):
    g = read_graph(args.file)
    if args.kind == "triple":
        if args.s is None or args.t is None:
            raise UsageError("oracle triple needs --s and --t")
        rep = triple_report(g, args.s, args.t)
        out.append(to_json(rep))
        return 0 if rep.verdict else 1
    if args.kind == "trees":
        rep = trees_report(g)
        out.append(to_json(rep))
        return 0 if rep.verdict else 1
    subs = brute_subquartics(g)
    entries = [{"vertices": sorted(x), "d": p["d"], "matching": p["matching"], "edges": list(p["edges"])}
               for x, p in subs]
    normal = all(p["matching"] and p["d"] in (3, 4) for _, p in subs)
    out.append({"kind": "oracle-report", "query": "subquartics", "verdict": normal,
                "witness": entries, "enumerated": 1 << g.n})
    return 0 if normal else 1


def cmd_explore(args, out):
    q = as_quartic(read_graph(args.file))
    ts = sorted(q.transits)
    pairs = []
    for s in ts:
        for t in ts:
            if s != t:
                tr = search_triple(q.graph, s, t)
                pairs.append({"s": s, "t": t, "triple": None if tr is None else triple_json(tr)})
    found = any(p["triple"] is not None for p in pairs)
    out.append({"transits": ts, "pairs": pairs, "any": found})
    return 0 if found else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="goodorient", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    with_file("check2t", cmd_check2t, "decide whether a graph is 2T")
    with_file("circuits", cmd_circuits, "generic circuits of a 2T graph")
    with_file("normal", cmd_normal, "decide normality of a quartic")
    for name, fn, help_ in (
        ("orient", cmd_orient, "(s,t)-triple of a quartic with matching neighbourhoods"),
        ("orient4r4c", cmd_orient4r4c, "(s,t)-triple of a 4-regular 4-connected graph"),
        ("dense", cmd_dense, "spanning 2T subgraph with (s,t)-triple, min degree >= n/2"),
    ):
        sp = with_file(name, fn, help_)
        sp.add_argument("--s", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--dot", metavar="PATH", help="also write a DOT rendering")

    sp = with_file("verify", cmd_verify, "check a triple against a graph")
    sp.add_argument("triple")

    sp = sub.add_parser("gen", help="generate a graph in the text format")
    sp.add_argument("family")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("oracle", help="exhaustive ground truth on small graphs")
    sp.add_argument("kind", choices=["triple", "subquartics", "trees"])
    sp.add_argument("file")
    sp.add_argument("--s", type=int)
    sp.add_argument("--t", type=int)
    sp.set_defaults(fn=cmd_oracle)

    with_file("explore-transits", cmd_explore, "try every transit pair of a quartic")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out: list = []
    try:
        code = args.fn(args, out)
    except (UsageError, GraphError, OSError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=stderr)
        return 2
    for item in out:
        stdout.write(item if isinstance(item, str) else dumps(item))
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
