"""Flat spectra of Boolean functions under the {I,H,N}^n transform family."""

from .boolfunc import (
    AnfPolynomial,
    BooleanFunction,
    anf_to_function,
    degree,
    format_anf,
    function_to_anf,
    graph_of_quadratic,
    parse_anf,
    quadratic_of_graph,
)
from .constructions import Family, build, predicted_count
from .gf2 import Gf2Matrix, TransformAssignment, TransformSet, is_flat_rank, modified_matrix, rank
from .graph import Graph, complete_graph, path_graph
from .interlace import Q_eval, q_poly
from .orbits import code_distance, gf4_generator, lc_orbit, local_complement, search_functions, search_quadratics
from .transform import apply_transform, count_flat, count_flat_graph, is_flat, is_flat_balance

__all__ = [
    "AnfPolynomial", "BooleanFunction", "Family", "Gf2Matrix", "Graph", "Q_eval", "TransformAssignment",
    "TransformSet", "anf_to_function", "apply_transform", "build", "code_distance", "complete_graph",
    "count_flat", "count_flat_graph", "degree", "format_anf", "function_to_anf", "gf4_generator",
    "graph_of_quadratic", "is_flat", "is_flat_balance", "is_flat_rank", "lc_orbit", "local_complement",
    "modified_matrix", "parse_anf", "path_graph", "predicted_count", "q_poly", "quadratic_of_graph", "rank",
    "search_functions", "search_quadratics",
]
