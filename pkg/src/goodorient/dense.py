"""Spanning 2T subgraphs with (s,t)-triples in graphs of minimum degree >= n/2."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .graph import Graph, GraphError, components, edge_subgraph, induced_subgraph
from .oracle import brute_triple
from .orient import STTriple, TripleError, _checked, circuit_triple, compose_sum
from .sparsity import find_circuit_edges, is_2T

# remainders up to this size are solved by exhaustive search
SMALL = 7


@dataclass(frozen=True)
class Exceptional:
    """Two cliques of equal size sharing one vertex: no pair has a triple."""

    cut_vertex: int
    cliques: tuple[frozenset, frozenset]


@dataclass(frozen=True)
class AddVertex:
    x: int
    e1: int
    e2: int


@dataclass(frozen=True)
class BridgeJoin:
    other: "GrowthRecipe"
    # candidate (e_ac, e_bd) pairs, a and b on the grown side
    options: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GrowthRecipe:
    base: frozenset
    base_edges: frozenset | None  # None: base is solved by exhaustive search
    steps: tuple = ()

    def vertices(self, k: int | None = None) -> frozenset:
        vs = set(self.base)
        for st in self.steps[: len(self.steps) if k is None else k]:
            if isinstance(st, AddVertex):
                vs.add(st.x)
            else:
                vs |= st.other.vertices()
        return frozenset(vs)


@dataclass(frozen=True)
class DenseResult:
    subgraph: Graph
    triple: STTriple


def find_exception(g: Graph) -> Exceptional | None:
    n = g.n
    if n < 3 or n % 2 == 0:
        return None
    half = (n - 1) // 2
    for v in g.vertices:
        rest = induced_subgraph(g, g.vertex_set - {v})
        comps = components(rest)
        if len(comps) != 2 or any(len(c) != half for c in comps):
            continue
        cliques = tuple(c | {v} for c in comps)
        if all(_is_clique(g, c) for c in cliques):
            return Exceptional(v, cliques)
    return None


def _is_clique(g: Graph, vs: frozenset) -> bool:
    return all(vs - {v} <= g.neighbours(v) for v in vs)


# ---------------------------------------------------------------- pieces

def grow_by_vertex(g: Graph, tr: STTriple, x: int, e1: int, e2: int, role: str = "inner") -> STTriple:
    """Attach x (outside tr) through the edges e1 = xu, e2 = xv.

    role 'inner' keeps the roots; 'source' makes x the new s (tr must start
    at u or v) and 'sink' makes x the new t (tr must end at u or v).
    """
    if x in tr.order:
        raise GraphError("x already belongs to the triple")
    u, v = g.other_end(e1, x), g.other_end(e2, x)
    if u == v:
        raise GraphError("attachment edges must reach two different vertices")
    pos = tr.position()
    if u not in pos or v not in pos:
        raise GraphError("attachment edges must end inside the triple")
    if role == "inner":
        (p, ep), (q, eq) = sorted(((u, e1), (v, e2)), key=lambda z: pos[z[0]])
        k = pos[p] + 1
        out = STTriple(tr.s, tr.t, tr.order[:k] + (x,) + tr.order[k:], tr.I | {eq}, tr.O | {ep})
    elif role == "source":
        if tr.s not in (u, v):
            raise GraphError("new source must attach to the old source")
        e_root, e_other = (e1, e2) if tr.s == u else (e2, e1)
        out = STTriple(x, tr.t, (x,) + tr.order, tr.I | {e_other}, tr.O | {e_root})
    elif role == "sink":
        if tr.t not in (u, v):
            raise GraphError("new sink must attach to the old sink")
        e_root, e_other = (e1, e2) if tr.t == u else (e2, e1)
        out = STTriple(tr.s, x, tr.order + (x,), tr.I | {e_root}, tr.O | {e_other})
    else:
        raise GraphError("role must be 'inner', 'source' or 'sink'")
    host = induced_subgraph(g, out.order)
    return _checked(host, out, "grow_by_vertex")


def bridge_join(g: Graph, trg: STTriple, trh: STTriple, ac: int, bd: int, case: str | None = None) -> STTriple:
    """Join triples of two disjoint parts through the disjoint edges ac and bd.

    ``trg`` holds the final source.  Without ``case`` the composition is
    inferred from where the roots sit; ambiguous placements raise.
    """
    if ac == bd:
        raise GraphError("bridge edges must differ")
    if case is None:
        side = set(trg.order)
        h_ends = {y for e in (ac, bd) for y in g.ends[e] if y not in side}
        g_ends = {y for e in (ac, bd) for y in g.ends[e] if y in side}
        same = {trh.s, trh.t} == h_ends
        cross = trg.t in g_ends and trh.s in h_ends and not same
        if same == cross:
            raise GraphError("cannot infer the composition case; pass case=")
        case = "same-side" if same else "cross"
    return compose_sum(g, trg, trh, (ac, bd), case)


# ---------------------------------------------------------------- recipe

def _attach_edges(g: Graph, x: int, inside) -> tuple[int, int] | None:
    seen: dict[int, int] = {}
    for e, w in g.adjacency[x]:
        if w in inside and w not in seen:
            seen[w] = e
            if len(seen) == 2:
                a, b = seen.values()
                return a, b
    return None


def _bridge_options(g: Graph, inside: frozenset, other: frozenset) -> tuple[tuple[int, int], ...]:
    cross = [(e, u, v) if u in inside else (e, v, u) for e, u, v in g.edges
             if (u in inside and v in other) or (v in inside and u in other)]
    opts = []
    for i, (e, a, c) in enumerate(cross):
        for f, b, d in cross[i + 1:]:
            if a != b and c != d:
                opts.append((e, f))
    return tuple(opts)


def build_recipe(g: Graph, vs=None) -> GrowthRecipe:
    """Growth plan for G[vs]: base circuit, vertex additions, then one bridge to a remainder."""
    vs = g.vertex_set if vs is None else frozenset(vs)
    return _recipe(g, vs)


@lru_cache(maxsize=256)
def _recipe(g: Graph, vs: frozenset) -> GrowthRecipe:
    if len(vs) <= SMALL:
        return GrowthRecipe(vs, None)
    h = induced_subgraph(g, vs)
    found = find_circuit_edges(h)
    if found is None:
        raise TripleError("no generic circuit inside a dense part")
    base, base_edges = found
    inside = set(base)
    steps = []
    while inside != vs:
        grown = False
        for x in sorted(vs - inside):
            att = _attach_edges(h, x, inside)
            if att is not None:
                steps.append(AddVertex(x, *att))
                inside.add(x)
                grown = True
                break
        if grown:
            continue
        rest = vs - inside
        opts = _bridge_options(h, frozenset(inside), rest)
        if not opts:
            raise TripleError("remainder is not attached by two disjoint edges")
        steps.append(BridgeJoin(_recipe(g, rest), opts))
        inside |= rest
    return GrowthRecipe(base, base_edges, tuple(steps))


# ---------------------------------------------------------------- replay

def _base_triple(g: Graph, r: GrowthRecipe, s: int, t: int) -> STTriple:
    if r.base_edges is None:
        tr = brute_triple(induced_subgraph(g, r.base), s, t)
        if tr is None:
            raise TripleError(f"no ({s},{t})-triple on a small part {sorted(r.base)}")
        return tr
    return circuit_triple(edge_subgraph(g, r.base_edges, r.base), s, t)


def recipe_triple(g: Graph, r: GrowthRecipe, s: int, t: int, k: int | None = None) -> STTriple:
    """(s,t)-triple on the vertices covered by the first k steps of the recipe."""
    if k is None:
        k = len(r.steps)
    if k == 0:
        return _base_triple(g, r, s, t)
    step = r.steps[k - 1]
    if isinstance(step, AddVertex):
        x = step.x
        u, v = g.other_end(step.e1, x), g.other_end(step.e2, x)
        if x == s:
            y = u if u != t else v
            return grow_by_vertex(g, recipe_triple(g, r, y, t, k - 1), x, step.e1, step.e2, "source")
        if x == t:
            y = u if u != s else v
            return grow_by_vertex(g, recipe_triple(g, r, s, y, k - 1), x, step.e1, step.e2, "sink")
        return grow_by_vertex(g, recipe_triple(g, r, s, t, k - 1), x, step.e1, step.e2)
    a_side = r.vertices(k - 1)
    solve_a = lambda p, q: recipe_triple(g, r, p, q, k - 1)  # noqa: E731
    solve_b = lambda p, q: recipe_triple(g, step.other, p, q)  # noqa: E731
    return _join(g, a_side, step.other.vertices(), solve_a, solve_b, step.options, s, t)


def _join(g: Graph, A: frozenset, B: frozenset, solve_a: Callable, solve_b: Callable,
          options, s: int, t: int) -> STTriple:
    if s in B:
        # put the source side first
        A, B, solve_a, solve_b = B, A, solve_b, solve_a
    for e1, e2 in options:
        a, c = _oriented(g, e1, A)
        b, d = _oriented(g, e2, A)
        if t in A:
            ta = solve_a(s, t)
            pos = ta.position()
            tb = solve_b(c, d) if pos[a] < pos[b] else solve_b(d, c)
            return bridge_join(g, ta, tb, e1, e2, "same-side")
        # cross: the O-bridge enters B at its source, the I-bridge leaves A at its sink
        for (o_e, ao, bo), (i_e, ai, bi) in (((e1, a, c), (e2, b, d)), ((e2, b, d), (e1, a, c))):
            if s != ai and t != bo:
                ta = solve_a(s, ai)
                tb = solve_b(bo, t)
                return bridge_join(g, ta, tb, o_e, i_e, "cross")
    raise TripleError(f"no usable bridge for roots ({s},{t})")


def _oriented(g: Graph, e: int, side: frozenset) -> tuple[int, int]:
    u, v = g.ends[e]
    return (u, v) if u in side else (v, u)


# ---------------------------------------------------------------- driver

def dense_triple(g: Graph, s: int, t: int) -> DenseResult | Exceptional:
    """Spanning 2T subgraph with an (s,t)-triple for a graph with minimum degree >= floor(n/2)."""
    if g.n < 4:
        raise GraphError("need at least 4 vertices")
    if s == t or s not in g.vertex_set or t not in g.vertex_set:
        raise GraphError("s and t must be distinct vertices")
    if not g.is_simple():
        raise GraphError("graph must be simple")
    if g.min_degree() < g.n // 2:
        raise GraphError("minimum degree is below floor(n/2)")
    exc = find_exception(g)
    if exc is not None:
        return exc
    tr = recipe_triple(g, build_recipe(g), s, t)
    _checked(g, tr, "dense_triple")
    sub = edge_subgraph(g, tr.I | tr.O)
    if not is_2T(sub):
        raise TripleError("triple edges do not form a 2T subgraph")
    return DenseResult(sub, tr)
