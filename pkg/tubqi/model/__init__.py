"""Presentations of tubular groups and the exact height type."""

from .logvalue import LogValue, ZERO, total
from .graph import Edge, EdgeEnd, GraphOfGroups, change_basis, digest, format_graph
from .parser import parse_graph
from .validate import Diagnostic, ValidationReport, validate

__all__ = [
    "LogValue",
    "ZERO",
    "total",
    "Edge",
    "EdgeEnd",
    "GraphOfGroups",
    "change_basis",
    "digest",
    "format_graph",
    "parse_graph",
    "Diagnostic",
    "ValidationReport",
    "validate",
]
