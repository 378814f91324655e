"""(s,t)-triples: validation, branching decisions, circuit search and composition."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from . import _accel
from ._kernels import triple_search
from .graph import (
    Graph,
    GraphError,
    Orientation,
    Partition,
    QuotientGraph,
    components,
    connectivity_at_least,
    induced_subgraph,
    orient_by_ordering,
    quotient,
    remove_edges,
)
from .quartic import BadCertificate, QuarticInfo, TreeNode, as_quartic, coarsify
from .sparsity import is_generic_circuit


class TripleError(RuntimeError):
    """An operation produced (or was handed) something that is not a valid triple."""


@dataclass(frozen=True)
class STTriple:
    s: int
    t: int
    order: tuple[int, ...]
    I: frozenset
    O: frozenset

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class BranchingPair:
    """``out_branching[v]`` is the arc entering v (v != s) in the out-branching
    from s; ``in_branching[u]`` is the arc leaving u (u != t) in the
    in-branching to t."""

    out_branching: Mapping[int, int]
    in_branching: Mapping[int, int]


@dataclass(frozen=True)
class MatchingInfeasibility:
    """Demands (('in', v) / ('out', u)) jointly served by fewer arcs than demands."""

    demands: tuple[tuple[str, int], ...]
    arcs: frozenset


# ----------------------------------------------------------------- validate

def triple_violation(g: Graph, tr: STTriple) -> str | None:
    """Name of the first violated triple condition, or None."""
    vs = g.vertex_set
    if tr.s not in vs or tr.t not in vs:
        return "root not a vertex"
    if tr.s == tr.t:
        return "s equals t"
    if sorted(tr.order) != list(g.vertices):
        return "order is not a permutation of the vertices"
    if tr.order[0] != tr.s:
        return "order does not start at s"
    if tr.order[-1] != tr.t:
        return "order does not end at t"
    ends = g.ends
    if any(e not in ends for e in tr.I) or any(e not in ends for e in tr.O):
        return "unknown edge id"
    if tr.I & tr.O:
        return "I and O share an edge"
    for name, tree in (("I", tr.I), ("O", tr.O)):
        if len(tree) != g.n - 1 or len(components(g, tree)) != 1:
            return f"{name} is not a spanning tree"
    pos = tr.position()
    later = {v: False for v in g.vertices}
    earlier = {v: False for v in g.vertices}
    for e in tr.I:
        u, v = ends[e]
        later[u if pos[u] < pos[v] else v] = True
    for e in tr.O:
        u, v = ends[e]
        earlier[v if pos[u] < pos[v] else u] = True
    for v in tr.order:
        if v != tr.t and not later[v]:
            return f"vertex {v} has no later I-neighbour"
        if v != tr.s and not earlier[v]:
            return f"vertex {v} has no earlier O-neighbour"
    return None


def validate_triple(g: Graph, tr: STTriple) -> bool:
    return triple_violation(g, tr) is None


def _checked(g: Graph, tr: STTriple, what: str) -> STTriple:
    why = triple_violation(g, tr)
    if why is not None:
        raise TripleError(f"{what} produced an invalid triple: {why}")
    return tr


def check_branchings(d: Orientation, s: int, t: int, bp: BranchingPair) -> bool:
    """Direct check that the pair forms arc-disjoint branchings rooted at s and t."""
    g = d.graph
    others = [v for v in g.vertices]
    if set(bp.out_branching) != set(others) - {s} or set(bp.in_branching) != set(others) - {t}:
        return False
    if set(bp.out_branching.values()) & set(bp.in_branching.values()):
        return False
    for v, e in bp.out_branching.items():
        if d.direction[e][1] != v:
            return False
    for u, e in bp.in_branching.items():
        if d.direction[e][0] != u:
            return False
    # every vertex reaches the root by following parent arcs
    for table, root, side in ((bp.out_branching, s, 0), (bp.in_branching, t, 1)):
        for v in others:
            x, steps = v, 0
            while x != root:
                x = d.direction[table[x]][side]
                steps += 1
                if steps > g.n:
                    return False
    return True


# ------------------------------------------------------ branching decision

def acyclic_branchings(d: Orientation, s: int, t: int) -> BranchingPair | MatchingInfeasibility:
    """Decide arc-disjoint out-/in-branchings at s and t in an acyclic digraph.

    Each vertex v != s demands an entering arc and each u != t a leaving
    arc; an arc u->v can serve in(v) or out(u).  Acyclicity with a unique
    source s and sink t makes any system of distinct representatives a pair
    of branchings, so the question is a bipartite matching.
    """
    if not d.is_acyclic():
        raise GraphError("orientation is cyclic")
    g = d.graph
    if s == t or s not in g.vertex_set or t not in g.vertex_set:
        raise GraphError("s and t must be distinct vertices")
    demands = [("in", v) for v in g.vertices if v != s] + [("out", u) for u in g.vertices if u != t]
    ins, outs = d.in_arcs(), d.out_arcs()
    options = [ins[v] if kind == "in" else outs[v] for kind, v in demands]
    if g.m < len(demands):
        return MatchingInfeasibility(tuple(demands), frozenset(g.edge_ids))
    owner: dict[int, int] = {}

    def augment(i: int, seen_arcs: set, seen_dem: set) -> bool:
        seen_dem.add(i)
        for e in options[i]:
            if e in seen_arcs:
                continue
            seen_arcs.add(e)
            if e not in owner or augment(owner[e], seen_arcs, seen_dem):
                owner[e] = i
                return True
        return False

    for i in range(len(demands)):
        seen_arcs: set = set()
        seen_dem: set = set()
        if not augment(i, seen_arcs, seen_dem):
            return MatchingInfeasibility(
                tuple(demands[j] for j in sorted(seen_dem)), frozenset(seen_arcs)
            )
    out_b, in_b = {}, {}
    for e, i in owner.items():
        kind, v = demands[i]
        (out_b if kind == "in" else in_b)[v] = e
    return BranchingPair(dict(sorted(out_b.items())), dict(sorted(in_b.items())))


def triple_from_order(g: Graph, order) -> STTriple | None:
    """Triple using the given order, if the oriented graph has the branchings."""
    d = orient_by_ordering(g, order)
    s, t = order[0], order[-1]
    res = acyclic_branchings(d, s, t)
    if isinstance(res, MatchingInfeasibility):
        return None
    tr = STTriple(s, t, tuple(order), frozenset(res.in_branching.values()),
                  frozenset(res.out_branching.values()))
    return _checked(g, tr, "matching")


# -------------------------------------------------------- prefix search

def _normalise_constraint(g: Graph, s: int, t: int, constraint):
    """(root, other endpoint, kind) for the kernel; root 0 = at s, 1 = at t."""
    if constraint is None:
        return -1, -1, -1
    eid, kind = constraint
    if kind not in ("I", "O"):
        raise GraphError("constraint kind must be 'I' or 'O'")
    if eid not in g.ends:
        raise GraphError(f"unknown constraint edge {eid}")
    u, v = g.ends[eid]
    k = 1 if kind == "I" else 0
    if {u, v} == {s, t}:
        return 1, s, k
    if s in (u, v):
        return 0, g.other_end(eid, s), k
    if t in (u, v):
        return 1, g.other_end(eid, t), k
    raise GraphError("constraint edge is not incident to s or t")


def _search_order(g: Graph, s: int, t: int, constraint):
    """Run the restarted prefix search; returns (order, parent) or None."""
    n = g.n
    if n > _accel.MAX_BITMASK_VERTICES:
        raise GraphError(f"prefix search supports at most {_accel.MAX_BITMASK_VERTICES} vertices")
    idx = g.index
    masks = [0] * n
    for _, u, v in g.edges:
        masks[idx[u]] |= 1 << idx[v]
        masks[idx[v]] |= 1 << idx[u]
    root, x, kind = _normalise_constraint(g, s, t, constraint)
    lx = idx[x] if x >= 0 else -1
    compiled = _accel.USE_NUMBA
    nbr = np.array(masks, dtype=np.int64) if compiled else masks
    dead = _accel.new_pair_set(compiled)
    order = np.zeros(n, np.int64)
    parent = np.zeros(n, np.int64)
    limit, seed = 500, 1
    while True:
        status = triple_search(nbr, n, idx[s], idx[t], root, lx, kind, seed, limit, dead, order, parent)
        if status == 1:
            vs = g.vertices
            return [vs[int(i)] for i in order], {vs[i]: vs[int(parent[i])] for i in range(n) if i != idx[s]}
        if status == 0:
            return None
        limit = int(limit * 1.3) + 1
        seed += 1


def _triple_from_parents(g: Graph, s: int, t: int, order, parent) -> STTriple:
    pair_id = {(u, v): e for e, u, v in g.edges}
    O = set()
    for v, w in parent.items():
        O.add(pair_id[(min(v, w), max(v, w))])
    I = frozenset(g.edge_ids) - O
    return STTriple(s, t, tuple(order), I, frozenset(O))


def _honours(g: Graph, tr: STTriple, constraint) -> bool:
    if constraint is None:
        return True
    eid, kind = constraint
    return eid in (tr.I if kind == "I" else tr.O)


def search_triple(g: Graph, s: int, t: int, constraint=None) -> STTriple | None:
    """Exact search for an (s,t)-triple using every edge of a simple graph with 2n-2 edges."""
    if s == t or s not in g.vertex_set or t not in g.vertex_set:
        raise GraphError("s and t must be distinct vertices")
    if g.m != 2 * g.n - 2:
        raise GraphError("prefix search needs exactly 2n-2 edges")
    if g.n == 2:
        return _two_cycle_triple(g, s, t, constraint)
    if not g.is_simple():
        raise GraphError("prefix search needs a simple graph")
    found = _search_order(g, s, t, constraint)
    if found is None:
        return None
    tr = _triple_from_parents(g, s, t, *found)
    _checked(g, tr, "prefix search")
    if not _honours(g, tr, constraint):
        raise TripleError("prefix search ignored the edge constraint")
    return tr


def _two_cycle_triple(g: Graph, s: int, t: int, constraint) -> STTriple:
    e1, e2 = g.edge_ids
    i_edge = e2
    if constraint is not None:
        eid, kind = constraint
        i_edge = eid if kind == "I" else (e1 if eid == e2 else e2)
    o_edge = e1 if i_edge == e2 else e2
    return STTriple(s, t, (s, t), frozenset([i_edge]), frozenset([o_edge]))


@lru_cache(maxsize=4096)
def _circuit_triple_cached(c: Graph, s: int, t: int, constraint) -> STTriple | None:
    return search_triple(c, s, t, constraint)


@lru_cache(maxsize=1024)
def _is_circuit_cached(c: Graph) -> bool:
    return is_generic_circuit(c)


def circuit_triple(c: Graph, s: int, t: int, constraint=None) -> STTriple:
    """(s,t)-triple of a generic circuit, optionally forcing one root edge into I or O."""
    if s == t:
        raise GraphError("s and t must differ")
    if s not in c.vertex_set or t not in c.vertex_set:
        raise GraphError("roots must be vertices of the circuit")
    if not _is_circuit_cached(c):
        raise GraphError("input is not a generic circuit")
    if constraint is not None:
        constraint = (int(constraint[0]), str(constraint[1]))
        _normalise_constraint(c, s, t, constraint)
    tr = _circuit_triple_cached(c, s, t, constraint)
    if tr is None:
        raise TripleError(f"no ({s},{t})-triple found for a generic circuit")
    return tr


# ------------------------------------------------------------ composition

def _union_graph(g: Graph, *trs: STTriple) -> Graph:
    vs = set()
    for tr in trs:
        vs.update(tr.order)
    return induced_subgraph(g, vs)


def compose_sum(g: Graph, tq: STTriple, tr: STTriple, bridge: tuple[int, int], case: str) -> STTriple:
    """Join triples of two sides linked by two disjoint bridge edges.

    ``tq`` lives on the side holding s.  'cross': t is on the other side,
    so tq ends at the I-bridge endpoint and tr starts at the O-bridge
    endpoint.  'same-side': s and t are both in tq; tr is nested right after
    whichever bridge endpoint comes first in tq.
    """
    e1, e2 = bridge
    if e1 == e2:
        raise GraphError("bridge edges must differ")
    qside, rside = set(tq.order), set(tr.order)
    if qside & rside:
        raise GraphError("triples overlap")
    ends = []
    for e in (e1, e2):
        u, v = g.ends[e]
        if u in qside and v in rside:
            ends.append((u, v))
        elif v in qside and u in rside:
            ends.append((v, u))
        else:
            raise GraphError(f"edge {e} does not bridge the two sides")
    (a, c), (b, d) = ends
    if len({a, b, c, d}) != 4:
        raise GraphError("bridge is not a 2-matching")
    if case == "cross":
        if tq.t == b and tr.s == c:
            o_e, i_e = e1, e2
        elif tq.t == a and tr.s == d:
            o_e, i_e = e2, e1
        else:
            raise GraphError("root placement inconsistent with the cross case")
        out = STTriple(tq.s, tr.t, tq.order + tr.order, tq.I | tr.I | {i_e}, tq.O | tr.O | {o_e})
    elif case == "same-side":
        pos = tq.position()
        if pos[a] < pos[b]:
            first, o_e, i_e, want = a, e1, e2, (c, d)
        else:
            first, o_e, i_e, want = b, e2, e1, (d, c)
        if (tr.s, tr.t) != want:
            raise GraphError("root placement inconsistent with the same-side case")
        k = pos[first] + 1
        order = tq.order[:k] + tr.order + tq.order[k:]
        out = STTriple(tq.s, tq.t, order, tq.I | tr.I | {i_e}, tq.O | tr.O | {o_e})
    else:
        raise GraphError("case must be 'cross' or 'same-side'")
    return _checked(_union_graph(g, out), out, "compose_sum")


def local_roots(qq: QuotientGraph, qtr: STTriple, s: int, t: int) -> dict[int, tuple[int, int]]:
    """Block index -> (s_X, t_X): ends in X of the O-edge entering X and the I-edge leaving X."""
    pos = qtr.position()
    roots = {}
    for i in range(len(qq.partition)):
        sx = s if i == qtr.s else None
        tx = t if i == qtr.t else None
        for e in qtr.O:
            u, v = qq.graph.ends[e]
            if i in (u, v):
                other = v if u == i else u
                if pos[other] < pos[i]:
                    sx = qq.endpoint_in(e, i)
        for e in qtr.I:
            u, v = qq.graph.ends[e]
            if i in (u, v):
                other = v if u == i else u
                if pos[other] > pos[i]:
                    tx = qq.endpoint_in(e, i)
        roots[i] = (sx, tx)
    return roots


def compose_quotient(qq: QuotientGraph, qtr: STTriple, blocks: Mapping[int, STTriple],
                     s: int, t: int) -> STTriple:
    """Expand a quotient triple by the blocks' own triples."""
    roots = local_roots(qq, qtr, s, t)
    order: list[int] = []
    I, O = set(qtr.I), set(qtr.O)
    for i in qtr.order:
        blk = qq.partition.blocks[i]
        if len(blk) == 1:
            order.extend(blk)
            continue
        if i not in blocks:
            raise GraphError(f"missing triple for block {i}")
        btr = blocks[i]
        if set(btr.order) != blk:
            raise GraphError(f"triple for block {i} covers the wrong vertices")
        if (btr.s, btr.t) != roots[i]:
            raise GraphError(f"block {i}: local roots {(btr.s, btr.t)} differ from {roots[i]}")
        order.extend(btr.order)
        I |= btr.I
        O |= btr.O
    out = STTriple(s, t, tuple(order), frozenset(I), frozenset(O))
    return _checked(qq.base, out, "compose_quotient")


# ------------------------------------------------------------ quartics

def _solve_node(g: Graph, node: TreeNode, s: int, t: int) -> STTriple:
    if node.kind == "leaf":
        return circuit_triple(induced_subgraph(g, node.block), s, t)
    if node.kind == "sum":
        x, y = node.children
        e1, e2 = node.edges
        if s in x.block and t in y.block:
            return _solve_cross(g, x, y, e1, e2, s, t)
        if s in y.block and t in x.block:
            return _solve_cross(g, y, x, e1, e2, s, t)
        near, far = (x, y) if s in x.block else (y, x)
        tq = _solve_node(g, near, s, t)
        a, c = _split(g, e1, near.block)
        b, d = _split(g, e2, near.block)
        pos = tq.position()
        rs, rt = (c, d) if pos[a] < pos[b] else (d, c)
        tr = _solve_node(g, far, rs, rt)
        return compose_sum(g, tq, tr, (e1, e2), "same-side")
    sub = induced_subgraph(g, node.block)
    part = Partition.of(ch.block for ch in node.children)
    qq = quotient(sub, part)
    where = part.block_of()
    qtr = circuit_triple(qq.graph, where[s], where[t])
    roots = local_roots(qq, qtr, s, t)
    child_of = {ch.block: ch for ch in node.children}
    blocks = {}
    for i, blk in enumerate(part.blocks):
        if len(blk) > 1:
            blocks[i] = _solve_node(g, child_of[blk], *roots[i])
    return compose_quotient(qq, qtr, blocks, s, t)


def _split(g: Graph, e: int, side: frozenset) -> tuple[int, int]:
    u, v = g.ends[e]
    return (u, v) if u in side else (v, u)


def _solve_cross(g: Graph, qn: TreeNode, rn: TreeNode, e1: int, e2: int, s: int, t: int) -> STTriple:
    a, c = _split(g, e1, qn.block)
    b, d = _split(g, e2, qn.block)
    # O-bridge a->c, I-bridge b->d
    if s == b or t == c:
        (a, c, e1), (b, d, e2) = (b, d, e2), (a, c, e1)
    tq = _solve_node(g, qn, s, b)
    tr = _solve_node(g, rn, c, t)
    return compose_sum(g, tq, tr, (e1, e2), "cross")


def orient_quartic(q: QuarticInfo, s: int, t: int) -> STTriple | BadCertificate:
    """(s,t)-triple for distinct transits of a quartic whose subquartics have matching neighbourhoods."""
    if s == t:
        raise GraphError("s and t must differ")
    if s not in q.transits or t not in q.transits:
        raise GraphError("s and t must be transits")
    tree = coarsify(q, allow_sums=True)
    if isinstance(tree, BadCertificate):
        return tree
    return _checked(q.graph, _solve_node(q.graph, tree, s, t), "orient_quartic")


def orient_4r4c(g: Graph, s: int, t: int) -> STTriple:
    """(s,t)-triple of a 4-regular 4-connected graph via a quartic G - {e, f}."""
    if s == t or s not in g.vertex_set or t not in g.vertex_set:
        raise GraphError("s and t must be distinct vertices")
    if not g.is_simple():
        raise GraphError("graph is not simple")
    if any(g.degree(v) != 4 for v in g.vertices):
        raise GraphError("graph is not 4-regular")
    if not connectivity_at_least(g, 4, "vertex"):
        raise GraphError("graph is not 4-connected")
    pick = None
    for e, x in g.adjacency[s]:
        for f, y in g.adjacency[t]:
            if len({s, x, t, y}) == 4:
                pick = (e, f)
                break
        if pick:
            break
    assert pick is not None, "no disjoint edges at s and t"
    q = as_quartic(remove_edges(g, pick))
    res = orient_quartic(q, s, t)
    if isinstance(res, BadCertificate):
        raise TripleError("quartic from a 4-regular 4-connected graph is not a matching quartic")
    return _checked(g, res, "orient_4r4c")


# ------------------------------------------------------------------ misc

def to_dot(g: Graph, tr: STTriple) -> str:
    pos = tr.position()
    lines = ["digraph triple {", "  rankdir=LR;"]
    for v in tr.order:
        shape = "doublecircle" if v in (tr.s, tr.t) else "circle"
        lines.append(f'  {v} [shape={shape}, label="{v}"];')
    for e, u, v in g.edges:
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        if e in tr.I:
            cls = "I"
            style = 'color="red"'
        elif e in tr.O:
            cls = "O"
            style = 'color="blue"'
        else:
            cls = "unused"
            style = 'color="gray", style="dashed"'
        lines.append(f'  {a} -> {b} [id="e{e}", class="{cls}", {style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
