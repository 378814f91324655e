from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from corpus import cycle, k4, path, sum2k4, two_cycle
from goodorient.generate import complete, complete_bipartite, identified_cliques, k5_minus_2matching, nogoodor_hub, wheel
from goodorient.graph import GraphError, build_graph, components, edge_subgraph, is_spanning_tree
from goodorient.oracle import brute_two_trees, subset_sparsity
from goodorient.sparsity import (
    DenseSubset,
    PartitionCertificate,
    TreePair,
    find_any_circuit,
    find_circuit_edges,
    generic_circuits,
    is_2T,
    is_forest_cover,
    is_generic_circuit,
    pebble_game,
    sparsity_violation,
    two_spanning_trees,
)


@st.composite
def multigraphs(draw, min_n=2, max_n=7, tight=False):
    n = draw(st.integers(min_n, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    if tight:
        pairs = draw(st.lists(pair, min_size=2 * n - 2, max_size=2 * n - 2))
    else:
        pairs = draw(st.lists(pair, max_size=3 * n))
    return build_graph(n, pairs)


def crossing(g, blocks):
    where = {v: i for i, b in enumerate(blocks) for v in b}
    return sum(1 for _, u, v in g.edges if where[u] != where[v])


def test_forest_cover_examples():
    assert is_forest_cover(k4())
    assert not is_forest_cover(complete(5))
    assert is_forest_cover(two_cycle())


def test_2t_examples():
    assert is_2T(k4())
    assert not is_2T(cycle(4))
    assert is_2T(identified_cliques(7))
    with pytest.raises(GraphError):
        is_2T(build_graph(1, []))


def test_generic_circuit_examples():
    assert is_generic_circuit(wheel(4))
    assert is_generic_circuit(complete_bipartite(3, 4))
    assert is_generic_circuit(two_cycle())
    assert not is_generic_circuit(sum2k4())
    assert not is_generic_circuit(identified_cliques(7))


def test_two_trees_k4_and_k34():
    for g in (k4(), complete_bipartite(3, 4)):
        res = two_spanning_trees(g)
        assert isinstance(res, TreePair)
        assert res.tree_I | res.tree_O == set(g.edge_ids)
        assert is_spanning_tree(g, res.tree_I) and is_spanning_tree(g, res.tree_O)


def test_two_trees_path_certificate():
    res = two_spanning_trees(path(3))
    assert isinstance(res, PartitionCertificate)
    assert len(res.partition) == 3 and res.crossing == 2 and res.bound == 4


def test_two_trees_disconnected_input():
    g = build_graph(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    res = two_spanning_trees(g)
    assert isinstance(res, PartitionCertificate)
    assert res.crossing == 0 and res.crossing < res.bound


def test_circuits_of_sum():
    d = generic_circuits(sum2k4())
    assert [sorted(c) for c in d.circuits] == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert d.singletons == frozenset()
    assert [sorted(e) for e in d.circuit_edges] == [[0, 1, 2, 3, 4, 5], [6, 7, 8, 9, 10, 11]]


def test_circuits_of_k34_and_hub():
    assert generic_circuits(complete_bipartite(3, 4)).circuits == (frozenset(range(7)),)
    d = generic_circuits(nogoodor_hub(k5_minus_2matching()))
    assert len(d.circuits) == 3 and d.singletons == frozenset({15, 16, 17, 18})


def test_circuits_reject_non_2t():
    with pytest.raises(GraphError):
        generic_circuits(cycle(4))


def test_find_any_circuit():
    found = find_any_circuit(complete(8))
    assert found is not None
    _, es = find_circuit_edges(complete(8))
    assert is_generic_circuit(edge_subgraph(complete(8), es, found))
    assert find_any_circuit(path(5)) is None
    assert find_any_circuit(wheel(4)) == frozenset(range(5))


def test_sparsity_violation_k5():
    v = sparsity_violation(complete(5))
    assert isinstance(v, DenseSubset)
    assert v.edges > 2 * len(v.vertices) - 2
    assert sparsity_violation(k4()) is None


def test_pebble_game_k4_frozen():
    st_ = pebble_game(k4(), 2, 3)
    assert st_.rejected == (5,)
    assert len(st_.accepted) == 5 and st_.total() == 8
    st2 = pebble_game(k4(), 2, 2)
    assert st2.rejected == () and sum(st2.pebbles.values()) == 2


def test_pebble_game_rejects_other_parameters():
    with pytest.raises(ValueError):
        pebble_game(k4(), 3, 3)


@given(multigraphs(), st.sampled_from([2, 3]))
@settings(max_examples=80, deadline=None)
def test_pebble_invariants(g, l):
    res = pebble_game(g, 2, l)
    assert all(0 <= p <= 2 for p in res.pebbles.values())
    assert res.total() == 2 * g.n
    assert set(res.accepted) | set(res.rejected) == set(g.edge_ids)
    for e, (tail, head) in res.accepted.items():
        assert {tail, head} == set(g.ends[e])
    # accepted edges are (2,l)-sparse
    acc = [g.ends[e] for e in res.accepted]
    for r in range(2, g.n + 1):
        for xs in combinations(g.vertices, r):
            xs = set(xs)
            assert sum(1 for u, v in acc if u in xs and v in xs) <= 2 * r - l


@given(multigraphs())
@settings(max_examples=120, deadline=None)
def test_sparsity_agrees_with_subset_oracle(g):
    cover, two_t, circuit = subset_sparsity(g)
    assert is_forest_cover(g) == cover
    assert is_2T(g) == two_t
    assert is_generic_circuit(g) == circuit


@given(multigraphs(tight=True))
@settings(max_examples=120, deadline=None)
def test_sparsity_agrees_with_subset_oracle_on_tight_counts(g):
    cover, two_t, circuit = subset_sparsity(g)
    assert is_2T(g) == two_t
    assert is_generic_circuit(g) == circuit


@given(multigraphs(max_n=6))
@settings(max_examples=80, deadline=None)
def test_two_trees_agree_with_enumeration(g):
    res = two_spanning_trees(g)
    brute = brute_two_trees(g)
    assert isinstance(res, TreePair) == (brute is not None)
    if isinstance(res, TreePair):
        assert not (res.tree_I & res.tree_O)
        assert is_spanning_tree(g, res.tree_I) and is_spanning_tree(g, res.tree_O)
    else:
        blocks = res.partition.blocks
        assert crossing(g, blocks) == res.crossing < 2 * (len(blocks) - 1)


@given(multigraphs(min_n=3, tight=True), st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_circuit_decomposition_is_label_independent(g, rnd):
    assume(is_2T(g))
    d = generic_circuits(g)
    assert generic_circuits(g) == d
    perm = list(range(g.n))
    rnd.shuffle(perm)
    pairs = [(perm[u], perm[v]) for _, u, v in g.edges]
    rnd.shuffle(pairs)
    h = build_graph(g.n, pairs)
    inv = {p: i for i, p in enumerate(perm)}
    back = sorted(sorted(inv[x] for x in c) for c in generic_circuits(h).circuits)
    assert back == sorted(sorted(c) for c in d.circuits)


@given(multigraphs(min_n=3, tight=True))
@settings(max_examples=80, deadline=None)
def test_circuits_share_no_edges_and_at_most_one_vertex(g):
    assume(is_2T(g))
    d = generic_circuits(g)
    for xs, es in zip(d.circuits, d.circuit_edges):
        assert is_generic_circuit(edge_subgraph(g, es, xs))
    pairs = list(zip(d.circuits, d.circuit_edges))
    for (x1, e1), (x2, e2) in combinations(pairs, 2):
        assert len(x1 & x2) <= 1 and not (e1 & e2)
    assert components(g) == [g.vertex_set]
