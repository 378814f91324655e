"""Deterministic generators: named families, sums, hub/ring constructions, random graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError, build_graph, connectivity_at_least, relabel_dense
from .quartic import QuarticInfo, as_quartic


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return build_graph(n, list(combinations(range(n), 2)))


def wheel(k: int) -> Graph:
    """Hub 0 joined to the rim cycle 1..k."""
    if k < 3:
        raise GraphError("wheel needs k >= 3")
    spokes = [(0, i) for i in range(1, k + 1)]
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return build_graph(k + 1, spokes + rim)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides must be non-empty")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def circulant(n: int, jumps=(1, 2)) -> Graph:
    if n < 3 or not jumps or any(j <= 0 or 2 * j > n for j in jumps):
        raise GraphError("circulant needs n >= 3 and 0 < j <= n/2")
    pairs = []
    seen = set()
    for j in jumps:
        for i in range(n):
            p = (min(i, (i + j) % n), max(i, (i + j) % n))
            if p not in seen:
                seen.add(p)
                pairs.append(p)
    return build_graph(n, pairs)


def identified_cliques(n: int) -> Graph:
    """Two cliques on (n+1)/2 vertices sharing the vertex (n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise GraphError("identified cliques need odd n >= 3")
    k = (n + 1) // 2
    first = list(combinations(range(k), 2))
    second = list(combinations(range(k - 1, n), 2))
    return build_graph(n, first + second)


def k5_minus_2matching() -> Graph:
    return build_graph(5, [p for p in combinations(range(5), 2) if p not in ((1, 2), (3, 4))])


FAMILIES = {
    "complete": complete,
    "wheel": wheel,
    "complete_bipartite": complete_bipartite,
    "circulant": lambda n, *jumps: circulant(n, tuple(jumps) or (1, 2)),
    "identified_cliques": identified_cliques,
    "k5_minus_2matching": k5_minus_2matching,
}


def named(family: str, *params: int) -> Graph:
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}")
    try:
        return FAMILIES[family](*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {exc}") from None


def _as_info(q) -> QuarticInfo:
    return q if isinstance(q, QuarticInfo) else as_quartic(q)


def disjoint_union(*gs: Graph) -> tuple[Graph, list[dict[int, int]]]:
    """Dense relabelled union (ids by position); returns per-part vertex maps."""
    pairs: list[tuple[int, int]] = []
    maps = []
    off = 0
    for g in gs:
        mp = {v: off + i for i, v in enumerate(g.vertices)}
        pairs.extend((mp[u], mp[v]) for _, u, v in g.edges)
        maps.append(mp)
        off += g.n
    return build_graph(off, pairs), maps


def sum_graph(q, r, a: int, b: int, c: int, d: int) -> Graph:
    """Q and R joined by the edges ac and bd (transits a,b of Q; c,d of R).

    Q keeps its vertex order on 0..|Q|-1, R follows; ac and bd are the last
    two edge ids.
    """
    qi, ri = _as_info(q), _as_info(r)
    if a == b or c == d:
        raise GraphError("bridge endpoints must be distinct")
    if a not in qi.transits or b not in qi.transits:
        raise GraphError("a and b must be transits of Q")
    if c not in ri.transits or d not in ri.transits:
        raise GraphError("c and d must be transits of R")
    base, (mq, mr) = disjoint_union(qi.graph, ri.graph)
    g = build_graph(base.n, base.edge_list() + [(mq[a], mr[c]), (mq[b], mr[d])])
    as_quartic(g)
    return g


def nogoodor_hub(q) -> Graph:
    """Three copies of Q plus four hubs, hub i joined to transit i of each copy."""
    qi = _as_info(q)
    ts = sorted(qi.transits)
    base, maps = disjoint_union(qi.graph, qi.graph, qi.graph)
    hub0 = base.n
    extra = [(mp[x], hub0 + i) for i, x in enumerate(ts) for mp in maps]
    extra.sort(key=lambda p: (p[1], p[0]))
    return build_graph(base.n + 4, base.edge_list() + extra)


def nogoodor_ring(q) -> Graph:
    """Five copies Q_0..Q_4 with edges a_i c_{i+1} and b_i d_{i+1} (indices mod 5)."""
    qi = _as_info(q)
    a, b, c, d = sorted(qi.transits)
    base, maps = disjoint_union(*[qi.graph] * 5)
    extra = []
    for i in range(5):
        j = (i + 1) % 5
        extra.append((maps[i][a], maps[j][c]))
        extra.append((maps[i][b], maps[j][d]))
    return build_graph(base.n, base.edge_list() + extra)


# ----------------------------------------------------------------- random

def random_regular(n: int, d: int, rng: np.random.Generator, tries: int = 10000) -> Graph:
    """Pairing model with rejection of loops and multi-edges."""
    if n * d % 2 or d >= n:
        raise GraphError("no simple d-regular graph with these parameters")
    points = np.repeat(np.arange(n), d)
    for _ in range(tries):
        perm = rng.permutation(points)
        pairs = perm.reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        keyed = {(int(min(u, v)), int(max(u, v))) for u, v in pairs}
        if len(keyed) != len(pairs):
            continue
        return build_graph(n, sorted(keyed))
    raise GraphError("pairing model did not produce a simple graph")


def random_4r4c(n: int, seed: int, tries: int = 200) -> Graph:
    """Random 4-regular 4-connected simple graph on n vertices."""
    if n < 5:
        raise GraphError("4-regular simple graphs need n >= 5")
    if n == 5:
        return complete(5)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        g = random_regular(n, 4, rng)
        if connectivity_at_least(g, 4, "vertex"):
            return g
    raise GraphError("could not generate a 4-connected graph")


def random_min_degree(n: int, seed: int, delta: int | None = None) -> Graph:
    """Random simple graph with minimum degree at least ``delta`` (default floor(n/2)).

    Edges are added to a lowest-degree vertex (random tie break) towards a
    random non-neighbour until the bound holds.
    """
    if delta is None:
        delta = n // 2
    if delta >= n:
        raise GraphError("delta must be below n")
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    while True:
        degs = np.array([len(a) for a in adj])
        low = np.flatnonzero(degs == degs.min())
        if degs.min() >= delta:
            break
        v = int(rng.choice(low))
        cand = [w for w in range(n) if w != v and w not in adj[v]]
        w = int(rng.choice(cand))
        adj[v].add(w)
        adj[w].add(v)
    pairs = sorted((u, w) for u in range(n) for w in adj[u] if u < w)
    return build_graph(n, pairs)


def random_quartic_4r(n: int, seed: int, tries: int = 500) -> Graph | None:
    """A 4-regular graph minus two disjoint edges, if that yields a quartic."""
    rng = np.random.default_rng(seed)
    from .quartic import is_quartic
    from .graph import remove_edges

    for _ in range(tries):
        g = random_regular(n, 4, rng)
        es = list(g.edges)
        i, j = sorted(rng.choice(len(es), size=2, replace=False))
        e, f = es[i], es[j]
        if len({e[1], e[2], f[1], f[2]}) < 4:
            continue
        h = remove_edges(g, (e[0], f[0]))
        if is_quartic(h):
            return relabel_dense(h)[0]
    return None


def random_sum(rng: np.random.Generator, pool: list[Graph], depth: int) -> Graph:
    """Iterated sum of quartics from ``pool``, nesting at most ``depth`` levels."""
    if depth == 0 or rng.random() < 0.25:
        return pool[int(rng.integers(len(pool)))]
    q = random_sum(rng, pool, depth - 1)
    r = random_sum(rng, pool, depth - 1)
    qt = sorted(as_quartic(q).transits)
    rt = sorted(as_quartic(r).transits)
    a, b = (int(x) for x in rng.choice(qt, size=2, replace=False))
    c, d = (int(x) for x in rng.choice(rt, size=2, replace=False))
    return sum_graph(q, r, a, b, c, d)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: tuple[int, ...] = ()
    seed: int | None = None
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def build(self) -> Graph:
        if self.family == "random_4r4c":
            return random_4r4c(*self.params, seed=self.seed or 0)
        if self.family == "random_min_degree":
            return random_min_degree(*self.params, seed=self.seed or 0)
        return named(self.family, *self.params)
