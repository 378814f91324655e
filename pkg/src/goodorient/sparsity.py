"""Sparsity counts, two-tree packing and generic circuits."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ._kernels import pebble_game as _pebble_kernel
from .graph import Graph, GraphError, Partition, components, is_connected


@dataclass(frozen=True)
class TreePair:
    tree_I: frozenset
    tree_O: frozenset


@dataclass(frozen=True)
class PartitionCertificate:
    """A partition with fewer than 2(|blocks|-1) crossing edges."""

    partition: Partition
    crossing: int

    @property
    def bound(self) -> int:
        return 2 * (len(self.partition) - 1)


@dataclass(frozen=True)
class DenseSubset:
    """Vertex set X spanning more than 2|X|-2 edges."""

    vertices: frozenset
    edges: int


@dataclass(frozen=True)
class CircuitDecomposition:
    circuits: tuple[frozenset, ...]
    circuit_edges: tuple[frozenset, ...]
    singletons: frozenset

    def blocks(self) -> list[frozenset]:
        return sorted(list(self.circuits) + [frozenset([v]) for v in self.singletons], key=min)


@dataclass(frozen=True)
class PebbleState:
    k: int
    l: int
    pebbles: dict
    accepted: dict  # eid -> (tail, head): the vertex covering the edge is the tail
    rejected: tuple

    def total(self) -> int:
        return sum(self.pebbles.values()) + len(self.accepted)


def _arrays(g: Graph):
    idx = g.index
    eu = np.array([idx[u] for _, u, _ in g.edges], dtype=np.int64)
    ev = np.array([idx[v] for _, _, v in g.edges], dtype=np.int64)
    return eu, ev


def _run(g: Graph, k: int, l: int, circuits: bool = False, stop_first: bool = False):
    eu, ev = _arrays(g)
    return _pebble_kernel(g.n, eu, ev, k, l, circuits, stop_first)


def pebble_game(g: Graph, k: int = 2, l: int = 3) -> PebbleState:
    """Play the (k,l) game over the edges in ascending id order."""
    if (k, l) not in ((2, 2), (2, 3)):
        raise ValueError("only (2,2) and (2,3) games are supported")
    acc, _, peb, head, eid, deg = _run(g, k, l)
    vs = g.vertices
    accepted = {}
    for i in range(g.n):
        for j in range(int(deg[i])):
            e = g.edges[int(eid[i, j])][0]
            accepted[e] = (vs[i], vs[int(head[i, j])])
    rejected = tuple(g.edges[j][0] for j in range(g.m) if not acc[j])
    return PebbleState(k, l, {vs[i]: int(peb[i]) for i in range(g.n)}, accepted, rejected)


def is_forest_cover(g: Graph) -> bool:
    """Every non-empty X spans at most 2|X|-2 edges."""
    if g.m == 0:
        return True
    acc = _run(g, 2, 2)[0]
    return bool(acc.all())


def is_2T(g: Graph) -> bool:
    if g.n < 2:
        raise GraphError("need at least 2 vertices")
    return g.m == 2 * g.n - 2 and is_forest_cover(g)


def sparsity_violation(g: Graph, l: int = 2) -> DenseSubset | None:
    """A vertex set spanning more than 2|X|-l edges, found from the first rejection."""
    if g.m == 0:
        return None
    acc, circ, *_ = _run(g, 2, l, circuits=True, stop_first=True)
    rej = np.flatnonzero(~acc)
    if rej.size == 0:
        return None
    j = int(rej[0])
    xs = frozenset(g.vertices[i] for i in np.flatnonzero(circ[j]))
    inside = sum(1 for _, u, v in g.edges if u in xs and v in xs)
    return DenseSubset(xs, inside)


def _fundamental_circuits(g: Graph, stop_first: bool):
    acc, circ, *_ = _run(g, 2, 3, circuits=True, stop_first=stop_first)
    res = []
    for j in np.flatnonzero(~acc):
        j = int(j)
        members = frozenset(g.vertices[i] for i in np.flatnonzero(circ[j]))
        es = frozenset(
            g.edges[i][0]
            for i in range(j + 1)
            if (acc[i] or i == j) and g.edges[i][1] in members and g.edges[i][2] in members
        )
        res.append((members, es))
        if stop_first:
            break
    return res


def is_generic_circuit(g: Graph) -> bool:
    if g.n < 2 or g.m != 2 * g.n - 2:
        return False
    if not is_forest_cover(g):
        return False
    circs = _fundamental_circuits(g, stop_first=False)
    return len(circs) == 1 and circs[0][0] == g.vertex_set and len(circs[0][1]) == g.m


def generic_circuits(g: Graph) -> CircuitDecomposition:
    """Circuits of a 2T graph; for quartics they partition V together with the singletons."""
    if g.n < 2 or not is_2T(g):
        raise GraphError("input is not a 2T graph")
    circs = _fundamental_circuits(g, stop_first=False)
    circs.sort(key=lambda c: (min(c[0]), sorted(c[0])))
    covered = frozenset().union(*(c[0] for c in circs)) if circs else frozenset()
    return CircuitDecomposition(
        tuple(c[0] for c in circs),
        tuple(c[1] for c in circs),
        g.vertex_set - covered,
    )


def find_any_circuit(g: Graph) -> frozenset | None:
    """Vertex set of the circuit closed by the first dependent edge, if any.

    For simple graphs the returned set induces a generic circuit whenever the
    graph has no other dependent edges inside it; callers that need the
    circuit's own edges should use :func:`find_circuit_edges`.
    """
    found = find_circuit_edges(g)
    return None if found is None else found[0]


def find_circuit_edges(g: Graph) -> tuple[frozenset, frozenset] | None:
    if g.m == 0:
        return None
    circs = _fundamental_circuits(g, stop_first=True)
    return circs[0] if circs else None


# ------------------------------------------------------ two spanning trees

def two_spanning_trees(g: Graph) -> TreePair | PartitionCertificate:
    """Pack two edge-disjoint spanning trees or certify that none exist.

    Matroid partition over two copies of the graphic matroid: each edge is
    inserted by a shortest exchange path (BFS, ascending edge ids); edges
    that cannot be inserted are dropped.  If the packing ends short, an
    exchange search from all dropped edges labels a set L whose components
    form a partition crossed by fewer than 2(|blocks|-1) edges.
    """
    if g.n < 2:
        raise GraphError("need at least 2 vertices")
    if not is_connected(g):
        return PartitionCertificate(Partition.of(components(g)), 0)
    forests: list[set] = [set(), set()]
    dropped = []
    for e in g.edge_ids:
        if len(forests[0]) == g.n - 1 and len(forests[1]) == g.n - 1:
            dropped.append(e)
            continue
        if not _augment(g, forests, [e]):
            dropped.append(e)
    if len(forests[0]) == g.n - 1 and len(forests[1]) == g.n - 1:
        return TreePair(frozenset(forests[0]), frozenset(forests[1]))
    labelled = _labelled(g, forests, dropped)
    blocks = components(g, labelled)
    where = {v: i for i, b in enumerate(blocks) for v in b}
    cross = sum(1 for _, u, v in g.edges if where[u] != where[v])
    return PartitionCertificate(Partition.of(blocks), cross)


def _forest_path(g: Graph, forest: set, u: int, v: int) -> list[int] | None:
    """Edge ids on the path u..v in ``forest``, or None if disconnected."""
    adj: dict[int, list] = {}
    for e in sorted(forest):
        a, b = g.ends[e]
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    prev = {u: None}
    q = deque([u])
    while q:
        x = q.popleft()
        if x == v:
            break
        for e, y in adj.get(x, ()):
            if y not in prev:
                prev[y] = (e, x)
                q.append(y)
    if v not in prev:
        return None
    path = []
    x = v
    while prev[x] is not None:
        e, x = prev[x]
        path.append(e)
    return path


def _search(g: Graph, forests: list[set], sources: list[int]):
    """BFS over exchange steps.  Returns (label, finishing edge, forest) or
    (label, None, None) when no exchange sequence exists."""
    # label[f] = (e, i): e enters forest i, displacing f
    label: dict[int, tuple | None] = {e: None for e in sources}
    q = deque(sources)
    while q:
        e = q.popleft()
        u, v = g.ends[e]
        for i in (0, 1):
            if e in forests[i]:
                continue
            path = _forest_path(g, forests[i], u, v)
            if path is None:
                return label, e, i
            for f in sorted(path):
                if f not in label:
                    label[f] = (e, i)
                    q.append(f)
    return label, None, None


def _augment(g: Graph, forests: list[set], sources: list[int]) -> bool:
    label, e, i = _search(g, forests, sources)
    if e is None:
        return False
    while True:
        for f in forests:
            f.discard(e)
        forests[i].add(e)
        if label[e] is None:
            return True
        e, i = label[e]


def _labelled(g: Graph, forests: list[set], dropped: list[int]) -> set:
    label, e, _ = _search(g, forests, dropped)
    assert e is None, "packing was not maximal"
    return set(label)
