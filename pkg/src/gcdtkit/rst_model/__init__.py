from .relations import Arity, RelationLabel, is_known, lookup, relation_inventory
from .tree import (
    LEAF,
    MULTINUC,
    NUCLEUS,
    SATELLITE,
    SPAN,
    STRUCTURE_CODES,
    ChildEdge,
    Edu,
    RstNode,
    RstTree,
    leaf,
    multinuc_node,
    node_span,
    span_node,
    validate_structure,
)

__all__ = [
    "Arity", "ChildEdge", "Edu", "LEAF", "MULTINUC", "NUCLEUS", "RelationLabel",
    "RstNode", "RstTree", "SATELLITE", "SPAN", "STRUCTURE_CODES", "is_known", "leaf",
    "lookup", "multinuc_node", "node_span", "relation_inventory", "span_node",
    "validate_structure",
]
