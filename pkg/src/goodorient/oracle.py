"""Exhaustive ground-truth procedures for small inputs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Any

import numpy as np

from .graph import Graph, GraphError, Orientation, components, edge_neighborhood, is_matching
from .orient import BranchingPair, STTriple, triple_from_order
from .sparsity import TreePair


class GuardExceeded(GraphError):
    pass


@dataclass(frozen=True)
class OracleReport:
    query: str
    verdict: bool
    witness: Any
    enumerated: int


def _triple_scan(g: Graph, s: int, t: int) -> tuple[STTriple | None, int]:
    if g.n > 10:
        raise GuardExceeded("brute_triple is limited to 10 vertices")
    if s == t or s not in g.vertex_set or t not in g.vertex_set:
        raise GraphError("s and t must be distinct vertices")
    middle = [v for v in g.vertices if v not in (s, t)]
    count = 0
    for perm in permutations(middle):
        count += 1
        tr = triple_from_order(g, (s, *perm, t))
        if tr is not None:
            return tr, count
    return None, count


def brute_triple(g: Graph, s: int, t: int) -> STTriple | None:
    """First (s,t)-triple over all orders with s first and t last (lexicographic)."""
    return _triple_scan(g, s, t)[0]


def triple_report(g: Graph, s: int, t: int) -> OracleReport:
    tr, count = _triple_scan(g, s, t)
    return OracleReport(f"triple s={s} t={t}", tr is not None, tr, count)


def _subset_counts(g: Graph):
    n = g.n
    idx = g.index
    masks = np.arange(1 << n, dtype=np.int64)
    size = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        size += (masks >> i) & 1
    inside = np.zeros(1 << n, dtype=np.int64)
    for _, u, v in g.edges:
        inside += ((masks >> idx[u]) & 1) & ((masks >> idx[v]) & 1)
    return masks, size, inside


def _subquartic_scan(g: Graph):
    if g.n > 16:
        raise GuardExceeded("brute_subquartics is limited to 16 vertices")
    n = g.n
    masks, size, inside = _subset_counts(g)
    full = (1 << n) - 1
    dense = masks[(size >= 1) & (inside > 2 * size - 2)]
    tight = np.flatnonzero((size >= 2) & (inside == 2 * size - 2) & (masks != full))
    found = []
    for x in tight:
        x = int(x)
        if dense.size and np.any((dense & ~x) == 0):
            continue
        xs = frozenset(g.vertices[i] for i in range(n) if (x >> i) & 1)
        degs = [sum(1 for _, w in g.adjacency[v] if w in xs) for v in xs]
        if any(d not in (3, 4) for d in degs):
            continue
        pairs = [(u, w) for _, u, w in g.edges if u in xs and w in xs]
        if len(set(pairs)) != len(pairs):
            continue
        found.append(xs)
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found, 1 << n


def brute_subquartics(g: Graph) -> list[tuple[frozenset, dict]]:
    """All proper vertex sets inducing quartics, with neighbourhood profiles."""
    found, _ = _subquartic_scan(g)
    res = []
    for xs in found:
        nb = edge_neighborhood(g, xs)
        res.append((xs, {"d": len(nb), "matching": is_matching(g, nb), "edges": tuple(sorted(nb))}))
    return res


def is_normal_by_definition(g: Graph) -> bool:
    return all(p["matching"] and p["d"] in (3, 4) for _, p in brute_subquartics(g))


def subset_sparsity(g: Graph) -> tuple[bool, bool, bool]:
    """(forest cover, 2T, generic circuit) decided by enumerating every vertex subset."""
    if g.n > 16:
        raise GuardExceeded("subset enumeration is limited to 16 vertices")
    masks, size, inside = _subset_counts(g)
    nonempty = size >= 1
    cover = bool(np.all(inside[nonempty] <= 2 * size[nonempty] - 2))
    two_t = cover and g.m == 2 * g.n - 2 and g.n >= 2
    full = (1 << g.n) - 1
    proper = (size >= 2) & (masks != full)
    circuit = two_t and bool(np.all(inside[proper] <= 2 * size[proper] - 3))
    return cover, two_t, circuit


def spanning_tree_count(g: Graph) -> int:
    n = g.n
    if n <= 1:
        return 1
    idx = g.index
    lap = np.zeros((n, n))
    for _, u, v in g.edges:
        i, j = idx[u], idx[v]
        lap[i, i] += 1
        lap[j, j] += 1
        lap[i, j] -= 1
        lap[j, i] -= 1
    return int(round(np.linalg.det(lap[1:, 1:])))


def spanning_trees(g: Graph, limit: int = 500000):
    """Yield spanning trees (frozensets of edge ids) in lexicographic include-first order."""
    if spanning_tree_count(g) > limit:
        raise GuardExceeded("too many spanning trees to enumerate")
    edges = list(g.edges)
    need = g.n - 1
    idx = g.index

    def find(par, x):
        while par[x] != x:
            x = par[x]
        return x

    def connected_with(chosen_from: int, par) -> bool:
        # can the chosen forest plus edges[chosen_from:] still span?
        p = list(par)
        for e, u, v in edges[chosen_from:]:
            a, b = find(p, idx[u]), find(p, idx[v])
            if a != b:
                p[a] = b
        root = find(p, 0)
        return all(find(p, i) == root for i in range(g.n))

    def rec(i: int, chosen: list, par: list):
        if len(chosen) == need:
            yield frozenset(chosen)
            return
        if i == len(edges) or len(edges) - i < need - len(chosen):
            return
        e, u, v = edges[i]
        a, b = find(par, idx[u]), find(par, idx[v])
        if a != b:
            p2 = list(par)
            p2[a] = b
            yield from rec(i + 1, chosen + [e], p2)
        if connected_with(i + 1, par):
            yield from rec(i + 1, chosen, par)

    if g.n == 1:
        yield frozenset()
        return
    if not connected_with(0, list(range(g.n))):
        return
    yield from rec(0, [], list(range(g.n)))


def _two_tree_scan(g: Graph):
    count = 0
    all_e = frozenset(g.edge_ids)
    for tree in spanning_trees(g):
        count += 1
        rest = all_e - tree
        if len(components(g, rest)) == 1:
            second = next(t for t in spanning_trees(_restrict(g, rest)))
            return TreePair(tree, second), count
    return None, count


def _restrict(g: Graph, eids) -> Graph:
    keep = frozenset(eids)
    return Graph(g.vertices, tuple(e for e in g.edges if e[0] in keep))


def brute_two_trees(g: Graph) -> TreePair | None:
    return _two_tree_scan(g)[0]


def trees_report(g: Graph) -> OracleReport:
    pair, count = _two_tree_scan(g)
    return OracleReport("two spanning trees", pair is not None, pair, count)


def brute_branchings(d: Orientation, s: int, t: int) -> BranchingPair | None:
    """First arc-disjoint out-branching at s / in-branching at t, by direct enumeration."""
    g = d.graph
    if g.n > 8:
        raise GuardExceeded("brute_branchings is limited to 8 vertices")
    ins, outs = d.in_arcs(), d.out_arcs()
    heads = [v for v in g.vertices if v != s]
    tails = [u for u in g.vertices if u != t]

    def reaches(table: dict, root: int, side: int) -> bool:
        for v in table:
            x, steps = v, 0
            while x != root:
                if x not in table:
                    return False
                x = d.direction[table[x]][side]
                steps += 1
                if steps > g.n:
                    return False
        return True

    for pick in product(*(ins[v] for v in heads)):
        out_b = dict(zip(heads, pick))
        if not reaches(out_b, s, 0):
            continue
        used = set(pick)
        avail = [[e for e in outs[u] if e not in used] for u in tails]
        if any(not a for a in avail):
            continue
        for pick2 in product(*avail):
            in_b = dict(zip(tails, pick2))
            if reaches(in_b, t, 1):
                return BranchingPair(out_b, in_b)
    return None
