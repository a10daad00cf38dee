"""Fault-tolerant diameter, eccentricity and distance sensitivity oracles."""

from .graph import (INF, ApspData, Graph, GraphFormatError, Path, PerturbedDist, apsp, diameter,
                    distance_matrix, eccentricity, parse_graph, replacement_path, sssp, strong_bridges)
from .hitting import greedy_pivot_selection

__version__ = "0.1.0"

__all__ = [
    "INF", "ApspData", "Graph", "GraphFormatError", "Path", "PerturbedDist", "apsp", "diameter",
    "distance_matrix", "eccentricity", "parse_graph", "replacement_path", "sssp", "strong_bridges",
    "greedy_pivot_selection",
]
