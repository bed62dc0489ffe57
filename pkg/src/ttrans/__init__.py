"""Total transitivity of graphs: exact oracle, tree algorithm, split-graph checks, hardness reduction."""

from .errors import (
    CapExceededError,
    CeilingExceededError,
    ClaimViolation,
    GraphParseError,
    InfeasibleError,
    NotSplitError,
    PartitionStructureError,
    StructureError,
    TtransError,
)
from .graph import Graph, parse_edge_list, read_edge_list, to_edge_list, write_edge_list
from .oracle import exact_value, exact_vertex_numbers
from .partition import Kind, VertexPartition, Violation, normalize_tail, validate

__all__ = [
    "CapExceededError",
    "CeilingExceededError",
    "ClaimViolation",
    "Graph",
    "GraphParseError",
    "InfeasibleError",
    "Kind",
    "NotSplitError",
    "PartitionStructureError",
    "StructureError",
    "TtransError",
    "VertexPartition",
    "Violation",
    "exact_value",
    "exact_vertex_numbers",
    "normalize_tail",
    "parse_edge_list",
    "read_edge_list",
    "to_edge_list",
    "validate",
    "write_edge_list",
]
