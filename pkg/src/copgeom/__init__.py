"""Geometric graphs of small cop number: constructions, validators and an exact game solver."""

from .graph import Graph, GraphError, clique_substitute, girth, girth_lower_bound, subdivide
from .geometry import Drawing, ValidationReport, validate_geometric, validate_planar_drawing
from .solver import SolveResult, cop_number, is_k_copwin

__all__ = [
    "Drawing",
    "Graph",
    "GraphError",
    "SolveResult",
    "clique_substitute",
    "cop_number",
    "girth",
    "girth_lower_bound",
    "is_k_copwin",
    "subdivide",
    "ValidationReport",
    "validate_geometric",
    "validate_planar_drawing",
]
