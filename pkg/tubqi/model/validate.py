"""Structural checks on parsed presentations."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import networkx as nx

from .graph import GraphOfGroups
from ..pattern.slopes import slope_of

logger = logging.getLogger(__name__)

ERROR = "error"
WARNING = "warning"
INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    location: Optional[str] = None


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.severity == ERROR for d in self.diagnostics)

    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == ERROR]


def validate(graph: GraphOfGroups) -> ValidationReport:
    """
    Check that a presentation describes a tubular group.

    Errors are raised for vertices whose incident edge groups do not
    rationally span Z^2 (fewer than two distinct slopes), for disconnected
    graphs and for graphs without edges. Each vertex also gets an
    informational line count.

    Args:
        graph: A parsed presentation.

    Returns:
        The report; diagnostics are in canonical order so the result does
        not depend on declaration order.
    """
    diagnostics: List[Diagnostic] = []

    if not graph.edges:
        diagnostics.append(Diagnostic(ERROR, "no-edges", "presentation has no edges"))

    for vertex in graph.canonical_vertices():
        slopes = {slope_of(w) for w in graph.vectors_at(vertex)}
        if len(slopes) < 2:
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "crossing-graph",
                    f"incident edge groups at {vertex!r} do not span Q^2 "
                    f"({len(slopes)} distinct slope{'s' if len(slopes) != 1 else ''})",
                    vertex,
                )
            )
        diagnostics.append(
            Diagnostic(INFO, "line-count", f"{vertex!r} is a {len(slopes)}-line vertex", vertex)
        )

    underlying = nx.MultiGraph()
    underlying.add_nodes_from(graph.vertices)
    underlying.add_edges_from((e.end0.vertex, e.end1.vertex) for e in graph.edges)
    if graph.vertices and not nx.is_connected(underlying):
        components = sorted(sorted(c) for c in nx.connected_components(underlying))
        diagnostics.append(
            Diagnostic(
                ERROR,
                "disconnected",
                f"underlying graph has {len(components)} components: "
                + "; ".join(", ".join(c) for c in components),
            )
        )

    report = ValidationReport(diagnostics)
    logger.debug(f"Validation finished with {len(report.errors())} errors")
    return report
