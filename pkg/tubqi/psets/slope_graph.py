"""The slope graph: parallel line families of all vertex planes, linked by edges."""

import logging
from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from ..model.graph import GraphOfGroups
from ..model.logvalue import LogValue
from ..pattern.gram import Gram, edge_height
from ..pattern.slopes import ProjectiveSlope, edge_pattern, slope_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class LineNode:
    """A family of parallel lines in one vertex plane."""

    vertex: str
    slope: ProjectiveSlope

    def __str__(self) -> str:
        return f"({self.vertex},{self.slope})"


@dataclass(frozen=True)
class SlopeLink:
    """An edge of the presentation seen as a link between two line families."""

    edge: str
    source: LineNode
    target: LineNode
    height: LogValue


def build_slope_graph(graph: GraphOfGroups, grams: Mapping[str, Gram]) -> nx.MultiDiGraph:
    """
    Build the slope graph of a presentation.

    Nodes are LineNodes in canonical order. Every edge of the presentation
    becomes one link from its end-0 family to its end-1 family, keyed by
    the edge name and carrying the exact height in the "link" attribute.

    Args:
        graph: A validated presentation.
        grams: Metric of every vertex.

    Returns:
        A networkx MultiDiGraph; self-links and parallel links are kept.
    """
    sg = nx.MultiDiGraph()
    for vertex in graph.canonical_vertices():
        for slope in edge_pattern(graph, vertex).slopes:
            sg.add_node(LineNode(vertex, slope))

    for edge in graph.canonical_edges():
        source = LineNode(edge.end0.vertex, slope_of(edge.end0.vector))
        target = LineNode(edge.end1.vertex, slope_of(edge.end1.vector))
        height = edge_height(
            grams[edge.end0.vertex], grams[edge.end1.vertex], edge.end0.vector, edge.end1.vector
        )
        sg.add_edge(source, target, key=edge.name, link=SlopeLink(edge.name, source, target, height))

    logger.debug(
        f"Slope graph has {sg.number_of_nodes()} nodes and {sg.number_of_edges()} links"
    )
    return sg


def links_of(sg: nx.MultiDiGraph):
    """All links of a slope graph, in edge-name order."""
    return sorted((data["link"] for _, _, data in sg.edges(data=True)), key=lambda l: l.edge)
