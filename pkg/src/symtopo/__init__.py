"""Mesh, hypercube and symplectic interconnect topologies on integer lattices."""

from .errors import (
    CapacityError,
    DisconnectedGraphError,
    DomainError,
    InadmissibleNodeError,
    SpecParseError,
    SymtopoError,
)
from .lattice import (
    Family,
    NodeLabel,
    TopologySpec,
    is_admissible,
    label,
    node_count,
    parse_spec,
    unlabel,
)
from .metrics import (
    PathLengthHistogram,
    TopologySummary,
    density,
    density_ratio,
    diameter,
    distance,
    mean_path_length,
    path_length_histogram,
    path_length_histogram_sampled,
    summary,
)
from .oracle import OracleReport, bfs_distances, verify_degree_bounds, verify_distances
from .roots import RootVector, all_roots, long_roots, positive_roots, short_roots
from .topology import NodeClass, adjacency_matrix, classify, degree, edges, neighbors

__all__ = [
    "CapacityError", "DisconnectedGraphError", "DomainError", "InadmissibleNodeError",
    "SpecParseError", "SymtopoError", "Family", "NodeLabel", "TopologySpec", "is_admissible",
    "label", "node_count", "parse_spec", "unlabel", "PathLengthHistogram", "TopologySummary",
    "density", "density_ratio", "diameter", "distance", "mean_path_length",
    "path_length_histogram", "path_length_histogram_sampled", "summary", "OracleReport",
    "bfs_distances", "verify_degree_bounds", "verify_distances", "RootVector", "all_roots",
    "long_roots", "positive_roots", "short_roots", "NodeClass", "adjacency_matrix", "classify",
    "degree", "edges", "neighbors",
]
