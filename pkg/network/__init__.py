# network/__init__.py
from .edgelist import read_edge_list, write_edge_list
from .generators import GraphFamily, generate, parse_family
from .model import (
    Graph,
    Matching,
    MatchingCheck,
    NafAssignment,
    NafLoad,
    NodeId,
    assign_wire_ids,
    is_maximal,
    naf_load,
    validate_matching,
)

__all__ = [
    "Graph",
    "GraphFamily",
    "Matching",
    "MatchingCheck",
    "NafAssignment",
    "NafLoad",
    "NodeId",
    "assign_wire_ids",
    "generate",
    "is_maximal",
    "naf_load",
    "parse_family",
    "read_edge_list",
    "validate_matching",
    "write_edge_list",
]
