"""Good acyclic orientations and (s,t)-triples with checkable certificates."""
from ._accel import backend
from .dense import DenseResult, Exceptional, GrowthRecipe, bridge_join, build_recipe, dense_triple, grow_by_vertex
from .graph import (
    Graph,
    GraphError,
    Orientation,
    Partition,
    QuotientGraph,
    build_graph,
    connectivity_at_least,
    edge_neighborhood,
    format_graph,
    induced_subgraph,
    is_matching,
    orient_by_ordering,
    parse_graph,
    quotient,
    read_graph,
)
from .orient import (
    BranchingPair,
    MatchingInfeasibility,
    STTriple,
    TripleError,
    acyclic_branchings,
    circuit_triple,
    compose_quotient,
    compose_sum,
    orient_4r4c,
    orient_quartic,
    search_triple,
    triple_violation,
    validate_triple,
)
from .quartic import (
    BadCertificate,
    CoarsificationTree,
    QuarticInfo,
    TreeNode,
    as_quartic,
    check_normal,
    coarsify,
    subquartic_profile,
    verify_bad_certificate,
)
from .sparsity import (
    CircuitDecomposition,
    PartitionCertificate,
    PebbleState,
    TreePair,
    find_any_circuit,
    generic_circuits,
    is_2T,
    is_forest_cover,
    is_generic_circuit,
    pebble_game,
    two_spanning_trees,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoised circuit triples, recipes and connectivity answers."""
    from . import dense, graph, orient

    for fn in (orient._circuit_triple_cached, orient._is_circuit_cached, dense._recipe,
               graph.connectivity_at_least):
        fn.cache_clear()
