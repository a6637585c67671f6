from .graph import (
    RankedAdjacency,
    WeightedGraph,
    build_graph,
    build_graph_from_arrays,
    rank_neighbors,
    threshold_edges,
)
from .solution import (
    IMPROVEMENT_RTOL,
    SolutionState,
    apply_swap,
    init_state,
    is_improvement,
    objective_of,
    swap_delta,
)


__all__ = [
    # graph
    "RankedAdjacency",
    "WeightedGraph",
    "build_graph",
    "build_graph_from_arrays",
    "rank_neighbors",
    "threshold_edges",

    # solution
    "IMPROVEMENT_RTOL",
    "SolutionState",
    "apply_swap",
    "init_state",
    "is_improvement",
    "objective_of",
    "swap_delta",
]
