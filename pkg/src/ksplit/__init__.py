"""Two-commodity k-splittable flows: cut values, uniform-flow approximations, exact oracles."""

__version__ = "0.1.0"

from ksplit.approx import (  # noqa: E402
    concurrent_quarter,
    even_k_exact,
    scaled_graph,
    tu_double_flow,
    tu_half_approx,
)
from ksplit.core import Graph, Instance, generate_instance, parse_instance, serialize_instance  # noqa: E402
from ksplit.cuts import c_cut, c_k1k2_graph, c_k_graph, dem  # noqa: E402

__all__ = [
    "Graph",
    "Instance",
    "c_cut",
    "c_k1k2_graph",
    "c_k_graph",
    "concurrent_quarter",
    "dem",
    "even_k_exact",
    "generate_instance",
    "parse_instance",
    "scaled_graph",
    "serialize_instance",
    "tu_double_flow",
    "tu_half_approx",
]
