import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import k4, sum2k4, two_cycle
from goodorient.generate import circulant, complete, identified_cliques, k5_minus_2matching
from goodorient.graph import (
    Graph,
    GraphError,
    Partition,
    build_graph,
    components,
    connectivity_at_least,
    edge_neighborhood,
    edge_subgraph,
    format_graph,
    induced_subgraph,
    is_matching,
    is_spanning_tree,
    neighborhood_profile,
    orient_by_ordering,
    parse_graph,
    quotient,
    relabel_dense,
    remove_edges,
)


@st.composite
def multigraphs(draw, max_n=8, max_m=16):
    n = draw(st.integers(2, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, max_size=max_m))
    return build_graph(n, pairs)


def test_build_k4():
    g = k4()
    assert (g.n, g.m) == (4, 6)
    assert g.is_simple()


def test_two_cycle_is_a_multigraph():
    g = two_cycle()
    assert g.m == 2 and not g.is_simple()
    assert g.degree(0) == 2


def test_loop_rejected():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 0)])


def test_unknown_endpoint_rejected():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 5)])


def test_duplicate_edge_id_rejected():
    with pytest.raises(GraphError):
        Graph((0, 1), ((0, 0, 1), (0, 0, 1)))


def test_neighbourhood_of_k4_vertex_is_a_star():
    g = k4()
    nb = edge_neighborhood(g, {0})
    assert len(nb) == 3
    assert not is_matching(g, nb)


def test_neighbourhood_of_sum_summand_is_matching():
    g = sum2k4()
    nb, d, matching = neighborhood_profile(g, {0, 1, 2, 3})
    assert nb == frozenset({12, 13}) and d == 2 and matching


def test_neighbourhood_of_k5_minus_matching():
    g = k5_minus_2matching()
    nb = edge_neighborhood(g, {1, 2, 3, 4})
    assert len(nb) == 4
    assert not is_matching(g, nb)
    assert all(0 in g.ends[e] for e in nb)


def test_induced_subgraph():
    assert induced_subgraph(k4(), {0, 1, 2}).m == 3
    assert induced_subgraph(k5_minus_2matching(), {1, 3, 4, 0}).m == 5
    g = sum2k4()
    assert induced_subgraph(g, g.vertices) == g


def test_quotient_identity_partition_keeps_ids():
    g = sum2k4()
    qq = quotient(g, Partition.of([v] for v in g.vertices))
    assert qq.graph.n == g.n
    assert sorted(qq.graph.edge_ids) == sorted(g.edge_ids)


def test_quotient_full_block():
    g = k4()
    qq = quotient(g, Partition.of([g.vertices]))
    assert (qq.graph.n, qq.graph.m) == (1, 0)


def test_quotient_of_sum_is_two_cycle():
    g = sum2k4()
    qq = quotient(g, Partition.of([{0, 1, 2, 3}, {4, 5, 6, 7}]))
    assert (qq.graph.n, qq.graph.m) == (2, 2)
    assert sorted(qq.graph.edge_ids) == [12, 13]
    assert qq.endpoint_in(12, 0) == 0 and qq.endpoint_in(12, 1) == 4


def test_partition_must_cover():
    with pytest.raises(GraphError):
        quotient(k4(), Partition.of([{0, 1}, {2}]))


def test_orient_complete_order_gives_transitive_tournament():
    d = orient_by_ordering(k4(), [0, 1, 2, 3])
    assert all(u < v for _, u, v in d.arcs())
    assert d.topological_order() == [0, 1, 2, 3]


def test_orient_single_edge_reverse():
    d = orient_by_ordering(build_graph(2, [(0, 1)]), [1, 0])
    assert d.direction[0] == (1, 0)


def test_orient_parallel_edges_same_way():
    d = orient_by_ordering(two_cycle(), [1, 0])
    assert d.direction[0] == d.direction[1] == (1, 0)
    assert d.is_acyclic()


def test_orient_rejects_non_permutation():
    with pytest.raises(GraphError):
        orient_by_ordering(k4(), [0, 1, 2])


def test_connectivity_examples():
    assert connectivity_at_least(complete(5), 4, "vertex")
    assert not connectivity_at_least(sum2k4(), 3, "edge")
    assert connectivity_at_least(sum2k4(), 2, "edge")
    assert not connectivity_at_least(identified_cliques(7), 2, "vertex")
    assert connectivity_at_least(circulant(8), 4, "vertex")


def test_connectivity_bad_mode():
    with pytest.raises(GraphError):
        connectivity_at_least(k4(), 2, "arc")


def test_text_round_trip():
    g = sum2k4()
    assert parse_graph(format_graph(g)) == g


def test_text_comments_and_errors():
    assert parse_graph("# k2\n2 1\n0 1\n").m == 1
    with pytest.raises(GraphError):
        parse_graph("2 2\n0 1\n")
    with pytest.raises(GraphError):
        parse_graph("")
    with pytest.raises(GraphError):
        parse_graph("2 1\n0 x\n")


def test_components_and_spanning_tree():
    g = remove_edges(sum2k4(), [12, 13])
    assert sorted(map(sorted, components(g))) == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert is_spanning_tree(k4(), [0, 1, 2])
    assert not is_spanning_tree(k4(), [0, 1, 3])


def test_relabel_dense():
    g = edge_subgraph(sum2k4(), [6, 7, 8, 9, 10, 11], {4, 5, 6, 7})
    h, mp = relabel_dense(g)
    assert h.vertices == (0, 1, 2, 3) and h.edge_ids == tuple(range(6))
    assert set(mp) == {4, 5, 6, 7}


@given(multigraphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_quotient_preserves_crossing_ids(g, data):
    labels = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    groups = {}
    for v, lab in zip(g.vertices, labels):
        groups.setdefault(lab, set()).add(v)
    p = Partition.of(groups.values())
    qq = quotient(g, p)
    where = p.block_of()
    crossing = {e for e, u, v in g.edges if where[u] != where[v]}
    assert set(qq.graph.edge_ids) == crossing
    for e in crossing:
        u, v = g.ends[e]
        assert set(qq.graph.ends[e]) == {where[u], where[v]}


@given(multigraphs(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_ordering_orientations_are_acyclic(g, rnd):
    order = list(g.vertices)
    rnd.shuffle(order)
    d = orient_by_ordering(g, order)
    assert d.is_acyclic()
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[u] < pos[v] for _, u, v in d.arcs())


@given(multigraphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_edges_split_into_inside_outside_and_neighbourhood(g, data):
    x = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1, max_size=g.n - 1))
    inside = {e for e, u, v in g.edges if u in x and v in x}
    outside = {e for e, u, v in g.edges if u not in x and v not in x}
    nb = set(edge_neighborhood(g, x))
    assert inside | outside | nb == set(g.edge_ids)
    assert not (inside & nb) and not (outside & nb) and not (inside & outside)


@given(multigraphs())
@settings(max_examples=40, deadline=None)
def test_text_format_round_trip_property(g):
    assert parse_graph(format_graph(g)) == g
