from zole.graph.dump import format_graph, parse_graph
from zole.graph.errors import GraphError
from zole.graph.laplacian import (
    MIN_NEIGHBORS,
    ExemplarSet,
    PatchGraph,
    build_graph,
    pairwise_distance_sq,
    pixel_distance_sq,
    regularizer_grad,
    regularizer_value,
    select_epsilon,
)
from zole.graph.solver import denoise_map, solve_regularized

__all__ = [
    "MIN_NEIGHBORS",
    "ExemplarSet",
    "GraphError",
    "PatchGraph",
    "build_graph",
    "denoise_map",
    "format_graph",
    "pairwise_distance_sq",
    "parse_graph",
    "pixel_distance_sq",
    "regularizer_grad",
    "regularizer_value",
    "select_epsilon",
    "solve_regularized",
]
