"""P-set classes, vertex types and exact potentials."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .slope_graph import LineNode, SlopeLink, build_slope_graph, links_of
from ..model.graph import GraphOfGroups
from ..model.logvalue import ZERO, LogValue
from ..model.validate import validate
from ..pattern.gram import Gram, symmetric_gram
from ..pattern.moebius import Moebius, symmetry_group
from ..pattern.slopes import EdgePattern, ProjectiveSlope, edge_pattern
from ..utils.exceptions import InvalidGroupError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class TypeRef:
    """Vertex type {[R], i}: 1-based class id and 1-based type index."""

    class_id: int
    type_index: int

    def __str__(self) -> str:
        return f"{{[R{self.class_id}],{self.type_index}}}"


@dataclass(frozen=True, order=True)
class Match:
    """A pairing of a P-set class of the first group with one of the second."""

    left: int
    right: int

    def __str__(self) -> str:
        return f"([R{self.left}],[S{self.right}])"


@dataclass(frozen=True)
class PsetClass:
    """A connected component of the slope graph.

    potentials is None for a class of unbounded height change. Otherwise
    it maps every node to its height relative to the first node.
    """

    id: int
    nodes: Tuple[LineNode, ...]
    links: Tuple[SlopeLink, ...]
    potentials: Optional[Dict[LineNode, LogValue]] = field(default=None, compare=False)

    @property
    def bounded(self) -> bool:
        return self.potentials is not None

    @property
    def size(self) -> int:
        return len(self.nodes)

    def node(self, type_index: int) -> LineNode:
        return self.nodes[type_index - 1]

    def type_of(self, node: LineNode) -> int:
        return self.nodes.index(node) + 1

    def potential(self, type_index: int) -> Optional[LogValue]:
        if self.potentials is None:
            return None
        return self.potentials[self.node(type_index)]


def _step(sg: nx.MultiDiGraph, u: LineNode, v: LineNode) -> LogValue:
    """Height gained going from u to v along one link between them."""
    data = sg.get_edge_data(u, v)
    if data:
        return next(iter(data.values()))["link"].height
    data = sg.get_edge_data(v, u)
    return -next(iter(data.values()))["link"].height


def potentials_from(
    sg: nx.MultiDiGraph, nodes: Sequence[LineNode], base: LineNode
) -> Optional[Dict[LineNode, LogValue]]:
    """
    Integrate link heights over a spanning tree of one component.

    Args:
        sg: The slope graph.
        nodes: The nodes of one connected component.
        base: Node placed at height zero.

    Returns:
        The potential of every node, or None when some cycle of the
        component has nonzero total height.
    """
    component = sg.subgraph(nodes)
    potential = {base: ZERO}
    for u, v in nx.bfs_edges(component.to_undirected(), base):
        potential[v] = potential[u] + _step(component, u, v)

    for u, v, data in component.edges(data=True):
        if potential[v] - potential[u] != data["link"].height:
            return None
    return potential


def pset_classes(sg: nx.MultiDiGraph) -> List[PsetClass]:
    """
    Split a slope graph into P-set classes.

    Classes are ordered by their first node; nodes within a class are in
    canonical order, which fixes the type indices.
    """
    components = sorted(sorted(c) for c in nx.weakly_connected_components(sg))
    classes = []
    for index, nodes in enumerate(components, start=1):
        node_set = set(nodes)
        links = tuple(l for l in links_of(sg) if l.source in node_set)
        potentials = potentials_from(sg, nodes, nodes[0])
        classes.append(PsetClass(index, tuple(nodes), links, potentials))
        logger.debug(
            f"Class {index}: {len(nodes)} types, {'bounded' if potentials else 'unbounded'}"
        )
    return classes


@dataclass(frozen=True, eq=False)
class PsetAnalysis:
    """Everything computed from one presentation before comparison."""

    graph: GraphOfGroups
    patterns: Dict[str, EdgePattern]
    groups: Dict[str, List[Moebius]]
    grams: Dict[str, Gram]
    slope_graph: nx.MultiDiGraph
    classes: List[PsetClass]
    type_refs: Dict[LineNode, TypeRef]

    def cls(self, class_id: int) -> PsetClass:
        """
        The class with a 1-based id.

        Raises:
            ValueError: If no class has that id.
        """
        if not 1 <= class_id <= len(self.classes):
            raise ValueError(f"no class {class_id}; ids run from 1 to {len(self.classes)}")
        return self.classes[class_id - 1]

    def node_of(self, ref: TypeRef) -> LineNode:
        return self.cls(ref.class_id).node(ref.type_index)

    def potential(self, ref: TypeRef) -> Optional[LogValue]:
        return self.cls(ref.class_id).potential(ref.type_index)

    def line_count(self, vertex: str) -> int:
        return len(self.patterns[vertex])

    def ref(self, vertex: str, slope: ProjectiveSlope) -> TypeRef:
        return self.type_refs[LineNode(vertex, slope)]

    def type_multiset(self, vertex: str) -> List[Tuple[ProjectiveSlope, TypeRef]]:
        """One (slope, type) entry per line of the vertex, in slope order."""
        return [(s, self.ref(vertex, s)) for s in self.patterns[vertex].slopes]

    def all_bounded(self) -> bool:
        return all(c.bounded for c in self.classes)


def type_multiset(analysis: PsetAnalysis, vertex: str) -> List[Tuple[ProjectiveSlope, TypeRef]]:
    return analysis.type_multiset(vertex)


def analyze(
    graph: GraphOfGroups, gram_overrides: Optional[Mapping[str, Gram]] = None
) -> PsetAnalysis:
    """
    Run the pattern and P-set analysis of a presentation.

    Args:
        graph: A parsed presentation.
        gram_overrides: Metrics to use instead of the symmetric ones, by vertex.

    Returns:
        The analysis.

    Raises:
        InvalidGroupError: If the presentation is not a tubular group.
    """
    report = validate(graph)
    if not report.ok:
        reasons = "; ".join(d.message for d in report.errors())
        raise InvalidGroupError(f"invalid presentation: {reasons}", report)

    overrides = dict(gram_overrides or {})
    patterns, groups, grams = {}, {}, {}
    for vertex in graph.canonical_vertices():
        pattern = edge_pattern(graph, vertex)
        patterns[vertex] = pattern
        groups[vertex] = symmetry_group(pattern) if len(pattern) >= 3 else []
        grams[vertex] = overrides.get(vertex) or symmetric_gram(pattern, groups[vertex] or None)

    sg = build_slope_graph(graph, grams)
    classes = pset_classes(sg)
    type_refs = {
        node: TypeRef(c.id, index) for c in classes for index, node in enumerate(c.nodes, start=1)
    }
    logger.info(
        f"Analysed {len(graph.vertices)} vertices: {len(classes)} classes, "
        f"{sum(1 for c in classes if c.bounded)} bounded"
    )
    return PsetAnalysis(graph, patterns, groups, grams, sg, classes, type_refs)
