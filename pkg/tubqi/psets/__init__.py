"""P-set classes of a presentation and their height invariants."""

from .slope_graph import LineNode, SlopeLink, build_slope_graph, links_of
from .classes import (
    PsetAnalysis,
    Match,
    PsetClass,
    TypeRef,
    analyze,
    potentials_from,
    pset_classes,
    type_multiset,
)
from .max_slope import SlopeRatio, max_slope, step_graph

__all__ = [
    "LineNode",
    "SlopeLink",
    "build_slope_graph",
    "links_of",
    "PsetAnalysis",
    "Match",
    "PsetClass",
    "TypeRef",
    "analyze",
    "potentials_from",
    "pset_classes",
    "type_multiset",
    "SlopeRatio",
    "max_slope",
    "step_graph",
]
