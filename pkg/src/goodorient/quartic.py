"""Quartics: validation, subquartic profiles, normality and coarsification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import (
    Graph,
    GraphError,
    Partition,
    components,
    connectivity_at_least,
    edge_neighborhood,
    induced_subgraph,
    is_matching,
    quotient,
    remove_edges,
)
from .sparsity import find_circuit_edges, generic_circuits, is_2T


class NotQuartic(GraphError):
    pass


@dataclass(frozen=True)
class QuarticInfo:
    graph: Graph
    transits: frozenset


@dataclass(frozen=True)
class SubquarticProfile:
    d: int
    transit_count: int
    is_matching: bool


@dataclass(frozen=True)
class BadCertificate:
    """Witness that a quartic is not normal (or not a matching quartic).

    ``quartic`` induces a proper subquartic Q.  For kind 'non-matching',
    a and b lie in Q and share the neighbour c outside Q; for 'small-cut'
    the edge neighbourhood ``cut`` has fewer than 3 edges.
    """

    kind: str
    quartic: frozenset
    a: int | None = None
    b: int | None = None
    c: int | None = None
    cut: tuple[int, ...] = ()


@dataclass(frozen=True)
class TreeNode:
    kind: str  # 'leaf', 'sum' or 'circuit'
    block: frozenset
    edges: tuple[int, ...] = ()
    children: tuple[TreeNode, ...] = ()

    def leaves(self) -> list[TreeNode]:
        if self.kind == "leaf":
            return [self]
        return [x for c in self.children for x in c.leaves()]

    def nodes(self) -> list[TreeNode]:
        return [self] + [x for c in self.children for x in c.nodes()]


CoarsificationTree = TreeNode


def as_quartic(g: Graph) -> QuarticInfo:
    if not g.is_simple():
        raise NotQuartic("graph is not simple")
    if g.n < 2 or not is_2T(g):
        raise NotQuartic("graph is not 2T")
    bad = [v for v in g.vertices if g.degree(v) not in (3, 4)]
    if bad:
        raise NotQuartic(f"vertex {bad[0]} has degree {g.degree(bad[0])}")
    return QuarticInfo(g, frozenset(v for v in g.vertices if g.degree(v) == 3))


def is_quartic(g: Graph) -> bool:
    try:
        as_quartic(g)
    except NotQuartic:
        return False
    return True


def subquartic_profile(q: QuarticInfo, x) -> SubquarticProfile:
    xs = frozenset(x)
    g = q.graph
    if not xs or xs >= g.vertex_set or not xs <= g.vertex_set:
        raise GraphError("vertex set must be a non-empty proper subset")
    if not is_quartic(induced_subgraph(g, xs)):
        raise GraphError("vertex set does not induce a subquartic")
    nb = edge_neighborhood(g, xs)
    if len(nb) not in (2, 3, 4):
        raise GraphError(f"edge neighbourhood has size {len(nb)}; not a subquartic")
    return SubquarticProfile(len(nb), len(xs & q.transits), is_matching(g, nb))


def verify_bad_certificate(g: Graph, cert: BadCertificate) -> bool:
    qs = cert.quartic
    if not qs or not qs < g.vertex_set:
        return False
    if not is_quartic(induced_subgraph(g, qs)):
        return False
    if cert.kind == "non-matching":
        a, b, c = cert.a, cert.b, cert.c
        if a is None or b is None or c is None:
            return False
        if a == b or a not in qs or b not in qs or c in qs or c not in g.vertex_set:
            return False
        return c in g.neighbours(a) and c in g.neighbours(b)
    if cert.kind == "small-cut":
        nb = edge_neighborhood(g, qs)
        return set(cert.cut) == set(nb) and (len(nb) not in (3, 4) or not is_matching(g, nb))
    return False


def _peel(g: Graph, z: frozenset):
    """Strip vertices of degree <= 2 from G[z]; returns (core, last stripped)."""
    h = set(z)
    last = None
    while True:
        low = [v for v in sorted(h) if sum(1 for _, w in g.adjacency[v] if w in h) <= 2]
        if not low:
            return frozenset(h), last
        last = low[0]
        h.discard(last)


def _shared_neighbour(g: Graph, z: frozenset):
    for c in g.vertices:
        if c in z:
            continue
        inside = sorted(w for w in g.neighbours(c) if w in z)
        if len(inside) >= 2:
            return inside[0], inside[1], c
    return None


def _block_defect(g: Graph, z: frozenset, allow_sums: bool) -> BadCertificate | None:
    """Certificate if the proper block z does not look like a good subquartic."""
    if z == g.vertex_set:
        return None
    core, last = _peel(g, z)
    if last is not None:
        inside = sorted(w for w in g.neighbours(last) if w in core)
        return BadCertificate("non-matching", core, inside[0], inside[1], last)
    nb = edge_neighborhood(g, z)
    if not is_matching(g, nb):
        a, b, c = _shared_neighbour(g, z)
        return BadCertificate("non-matching", z, a, b, c)
    ok = (2, 3, 4) if allow_sums else (3, 4)
    if len(nb) not in ok:
        return BadCertificate("small-cut", z, cut=tuple(sorted(nb)))
    return None


def coarsify(q: QuarticInfo, allow_sums: bool = True) -> TreeNode | BadCertificate:
    """Merge circuit/singleton blocks bottom-up into a coarsification tree.

    Parallel quotient edges are merged first (as sums), scanning block pairs
    by ascending minimum vertex; otherwise the first generic circuit of the
    quotient is merged.  Every new block is checked on creation.
    """
    g = q.graph
    dec = generic_circuits(g)
    nodes: dict[frozenset, TreeNode] = {}
    for c in dec.circuits:
        nodes[c] = TreeNode("leaf", c)
        bad = _block_defect(g, c, allow_sums)
        if bad is not None:
            return bad
    for v in sorted(dec.singletons):
        nodes[frozenset([v])] = TreeNode("leaf", frozenset([v]))
    while len(nodes) > 1:
        part = Partition.of(nodes)
        qq = quotient(g, part)
        between: dict[tuple[int, int], list[int]] = {}
        for e, i, j in qq.graph.edges:
            between.setdefault((i, j), []).append(e)
        multi = sorted(p for p, es in between.items() if len(es) >= 2)
        if multi:
            i, j = multi[0]
            es = tuple(sorted(between[(i, j)]))
            x, y = part.blocks[i], part.blocks[j]
            for side, other in ((x, y), (y, x)):
                # two edges from one vertex of ``other`` into ``side``
                outer = [qq.endpoint_in(e, part.blocks.index(other)) for e in es]
                if outer[0] == outer[1]:
                    ends = sorted(qq.endpoint_in(e, part.blocks.index(side)) for e in es)
                    return BadCertificate("non-matching", side, ends[0], ends[1], outer[0])
            z = x | y
            new = TreeNode("sum", z, es, (nodes[x], nodes[y]))
            merged = (x, y)
        else:
            found = find_circuit_edges(qq.graph)
            if found is None:
                raise RuntimeError("quotient of a quartic has no generic circuit")
            members, es = found
            parts = [part.blocks[i] for i in sorted(members)]
            z = frozenset().union(*parts)
            new = TreeNode("circuit", z, tuple(sorted(es)), tuple(nodes[b] for b in parts))
            merged = tuple(parts)
        for b in merged:
            del nodes[b]
        nodes[z] = new
        bad = _block_defect(g, z, allow_sums)
        if bad is not None:
            return bad
    return next(iter(nodes.values()))


def _smallest_two_cut(g: Graph):
    best = None
    for e, f in combinations(g.edge_ids, 2):
        comps = components(remove_edges(g, (e, f)))
        if len(comps) > 1:
            side = min(comps, key=lambda c: (len(c), min(c)))
            if best is None or len(side) < len(best):
                best = side
    return best


def check_normal(q: QuarticInfo) -> TreeNode | BadCertificate:
    g = q.graph
    if not connectivity_at_least(g, 3, "edge"):
        side = _smallest_two_cut(g)
        bad = _block_defect(g, side, allow_sums=False)
        assert bad is not None
        return bad
    return coarsify(q, allow_sums=False)


def is_normal(q: QuarticInfo) -> bool:
    return isinstance(check_normal(q), TreeNode)
