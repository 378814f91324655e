"""Multigraphs with stable edge ids, partitions, quotients and connectivity."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import networkx as nx


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Loopless multigraph.

    ``vertices`` is a sorted tuple of ids and ``edges`` a tuple of
    ``(eid, u, v)`` with ``u < v``, sorted by eid.  Subgraphs and quotients
    keep the original edge ids.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        seen = set()
        for eid, u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u} (edge {eid})")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)

    @staticmethod
    def make(vertices: Iterable[int], edges: Iterable[tuple[int, int, int]]) -> Graph:
        es = sorted((e, min(u, v), max(u, v)) for e, u, v in edges)
        return Graph(tuple(sorted(vertices)), tuple(es))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e for e, _, _ in self.edges)

    @cached_property
    def ends(self) -> dict[int, tuple[int, int]]:
        return {e: (u, v) for e, u, v in self.edges}

    @cached_property
    def adjacency(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """vertex -> ((eid, neighbour), ...) in ascending edge id."""
        adj: dict[int, list] = {v: [] for v in self.vertices}
        for e, u, v in self.edges:
            adj[u].append((e, v))
            adj[v].append((e, u))
        return {v: tuple(a) for v, a in adj.items()}

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbours(self, v: int) -> set[int]:
        return {w for _, w in self.adjacency[v]}

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.ends[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def is_simple(self) -> bool:
        pairs = [(u, v) for _, u, v in self.edges]
        return len(set(pairs)) == len(pairs)

    def min_degree(self) -> int:
        return min(self.degree(v) for v in self.vertices)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(u, v) for _, u, v in self.edges]


def build_graph(n: int, pairs: Sequence[tuple[int, int]]) -> Graph:
    """Graph on 0..n-1; edge ids are positions in ``pairs``."""
    if n < 0:
        raise GraphError("negative vertex count")
    edges = []
    for i, (u, v) in enumerate(pairs):
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {i} endpoint out of range")
        if u == v:
            raise GraphError(f"loop at vertex {u} (edge {i})")
        edges.append((i, min(u, v), max(u, v)))
    return Graph(tuple(range(n)), tuple(edges))


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset, ...]

    @staticmethod
    def of(blocks: Iterable[Iterable[int]]) -> Partition:
        bs = [frozenset(b) for b in blocks]
        if any(not b for b in bs):
            raise GraphError("empty block")
        return Partition(tuple(sorted(bs, key=min)))

    @staticmethod
    def singletons(g: Graph) -> Partition:
        return Partition(tuple(frozenset([v]) for v in g.vertices))

    def check(self, g: Graph) -> None:
        seen: set = set()
        for b in self.blocks:
            if seen & b:
                raise GraphError("blocks overlap")
            seen |= b
        if seen != g.vertex_set:
            raise GraphError("blocks do not cover the vertex set")

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class QuotientGraph:
    """``graph`` has one vertex per block (the block's index)."""

    base: Graph
    partition: Partition
    crossing: frozenset
    graph: Graph

    def block(self, i: int) -> frozenset:
        return self.partition.blocks[i]

    def endpoint_in(self, eid: int, i: int) -> int:
        """Endpoint (in the base graph) of crossing edge ``eid`` lying in block i."""
        u, v = self.base.ends[eid]
        b = self.partition.blocks[i]
        if u in b:
            return u
        if v in b:
            return v
        raise GraphError(f"edge {eid} does not touch block {i}")


def quotient(g: Graph, p: Partition) -> QuotientGraph:
    p.check(g)
    where = p.block_of()
    edges = []
    for e, u, v in g.edges:
        bu, bv = where[u], where[v]
        if bu != bv:
            edges.append((e, bu, bv))
    qg = Graph.make(range(len(p.blocks)), edges)
    return QuotientGraph(g, p, frozenset(e for e, _, _ in edges), qg)


def edge_neighborhood(g: Graph, x: Iterable[int]) -> frozenset:
    xs = frozenset(x)
    if not xs or xs >= g.vertex_set:
        raise GraphError("vertex set must be non-empty and proper")
    if not xs <= g.vertex_set:
        raise GraphError("vertex set not contained in the graph")
    return frozenset(e for e, u, v in g.edges if (u in xs) != (v in xs))


def is_matching(g: Graph, eids: Iterable[int]) -> bool:
    used: set = set()
    for e in eids:
        u, v = g.ends[e]
        if u in used or v in used:
            return False
        used.update((u, v))
    return True


def neighborhood_profile(g: Graph, x: Iterable[int]) -> tuple[frozenset, int, bool]:
    nb = edge_neighborhood(g, x)
    return nb, len(nb), is_matching(g, nb)


def induced_subgraph(g: Graph, x: Iterable[int]) -> Graph:
    xs = frozenset(x)
    if not xs:
        raise GraphError("empty vertex set")
    if not xs <= g.vertex_set:
        raise GraphError("vertex set not contained in the graph")
    return Graph(tuple(sorted(xs)), tuple(t for t in g.edges if t[1] in xs and t[2] in xs))


def edge_subgraph(g: Graph, eids: Iterable[int], vertices: Iterable[int] | None = None) -> Graph:
    keep = frozenset(eids)
    vs = g.vertices if vertices is None else tuple(sorted(vertices))
    return Graph(tuple(vs), tuple(t for t in g.edges if t[0] in keep))


def remove_edges(g: Graph, eids: Iterable[int]) -> Graph:
    drop = frozenset(eids)
    return Graph(g.vertices, tuple(t for t in g.edges if t[0] not in drop))


def relabel_dense(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Copy of g on 0..n-1 (ascending old ids) with edge ids 0..m-1; returns old->new map."""
    mp = {v: i for i, v in enumerate(g.vertices)}
    return build_graph(g.n, [(mp[u], mp[v]) for _, u, v in g.edges]), mp


def components(g: Graph, eids: Iterable[int] | None = None) -> list[frozenset]:
    """Connected components (optionally of the spanning subgraph on ``eids``), by min vertex."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    use = g.edges if eids is None else [(e, *g.ends[e]) for e in eids]
    for _, u, v in use:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, set] = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(b) for b in groups.values()), key=min)


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_spanning_tree(g: Graph, eids: Iterable[int]) -> bool:
    es = list(eids)
    if len(set(es)) != len(es) or len(es) != g.n - 1:
        return False
    if any(e not in g.ends for e in es):
        return False
    return len(components(g, es)) == 1


@dataclass(frozen=True)
class Orientation:
    graph: Graph
    direction: Mapping[int, tuple[int, int]] = field(hash=False)

    def arcs(self) -> list[tuple[int, int, int]]:
        """(eid, tail, head) in ascending edge id."""
        return [(e, *self.direction[e]) for e in self.graph.edge_ids]

    def in_arcs(self) -> dict[int, list[int]]:
        res: dict[int, list[int]] = {v: [] for v in self.graph.vertices}
        for e, _, h in self.arcs():
            res[h].append(e)
        return res

    def out_arcs(self) -> dict[int, list[int]]:
        res: dict[int, list[int]] = {v: [] for v in self.graph.vertices}
        for e, tl, _ in self.arcs():
            res[tl].append(e)
        return res

    def topological_order(self) -> list[int] | None:
        """Kahn's algorithm with smallest-id tie breaking; None if cyclic."""
        import heapq

        indeg = {v: 0 for v in self.graph.vertices}
        out = self.out_arcs()
        for _, _, h in self.arcs():
            indeg[h] += 1
        heap = [v for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for e in out[v]:
                h = self.direction[e][1]
                indeg[h] -= 1
                if indeg[h] == 0:
                    heapq.heappush(heap, h)
        return order if len(order) == self.graph.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None


def orient_by_ordering(g: Graph, order: Sequence[int]) -> Orientation:
    if sorted(order) != list(g.vertices):
        raise GraphError("order is not a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    direction = {}
    for e, u, v in g.edges:
        direction[e] = (u, v) if pos[u] < pos[v] else (v, u)
    return Orientation(g, direction)


def _nx_simple(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for _, u, v in g.edges:
        if h.has_edge(u, v):
            h[u][v]["weight"] += 1
        else:
            h.add_edge(u, v, weight=1)
    return h


@lru_cache(maxsize=512)
def connectivity_at_least(g: Graph, k: int, mode: str = "vertex") -> bool:
    """Exact k-(edge-)connectivity test."""
    if k < 1:
        raise GraphError("k must be positive")
    if mode not in ("vertex", "edge"):
        raise GraphError("mode must be 'vertex' or 'edge'")
    if mode == "vertex":
        if g.n <= k:
            return False
        h = _nx_simple(g)
        if not nx.is_connected(h):
            return False
        return nx.node_connectivity(h) >= k
    if g.n <= 1:
        return True
    h = _nx_simple(g)
    if not nx.is_connected(h):
        return False
    cut, _ = nx.stoer_wagner(h, weight="weight")
    return cut >= k


# ----------------------------------------------------------- text format

def format_graph(g: Graph, comment: str | None = None) -> str:
    """Text format: 'n m' then one 'u v' line per edge.  Requires dense ids."""
    if g.vertices != tuple(range(g.n)) or g.edge_ids != tuple(range(g.m)):
        g, _ = relabel_dense(g)
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for _, u, v in _input_order(g))
    return "\n".join(lines) + "\n"


def _input_order(g: Graph):
    return sorted(g.edges)


def parse_graph(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GraphError("empty graph file")
    head = rows[0]
    if len(head) != 2:
        raise GraphError("first line must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed graph file: {exc}") from None
    if len(pairs) != m:
        raise GraphError(f"header says {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
