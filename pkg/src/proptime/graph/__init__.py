"""Graph representation, family generators, and structure metrics."""

from .core import (
    GeometricLayout,
    Graph,
    edge_list_str,
    from_edges,
    read_edge_list,
    read_layout,
    write_edge_list,
    write_layout,
)
from .generators import FAMILIES, RANDOM_FAMILIES, FamilySpec, generate, generate_geometric
from .metrics import (
    UNREACHABLE,
    BfsTree,
    bfs_distances,
    bfs_tree,
    connected_components,
    diameter,
    eccentricities,
    eccentricity,
    giant_component,
    is_connected,
)

__all__ = [
    "Graph", "GeometricLayout", "from_edges", "read_edge_list",
    "write_edge_list", "read_layout", "write_layout", "edge_list_str",
    "FamilySpec", "generate", "generate_geometric", "FAMILIES",
    "RANDOM_FAMILIES", "BfsTree", "bfs_distances", "bfs_tree",
    "eccentricity", "eccentricities", "diameter", "is_connected",
    "connected_components", "giant_component", "UNREACHABLE",
]
