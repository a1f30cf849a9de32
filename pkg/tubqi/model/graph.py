"""Graph-of-groups presentations with Z^2 vertex groups and Z edge groups."""

import hashlib
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Tuple

Vector = Tuple[int, int]
Matrix = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class EdgeEnd:
    """One end of an edge: the vertex and the image of the edge generator."""

    vertex: str
    vector: Vector


@dataclass(frozen=True)
class Edge:
    name: str
    end0: EdgeEnd
    end1: EdgeEnd

    def ends(self) -> Tuple[EdgeEnd, EdgeEnd]:
        return (self.end0, self.end1)


@dataclass(frozen=True)
class GraphOfGroups:
    """A finite graph of groups, in declaration order.

    Vectors are stored exactly as written; (2,2) and (1,1) are different
    attaching data even though they span the same line.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    # Source line of each declaration, for diagnostics only.
    locations: Dict[str, int] = field(default_factory=dict, compare=False, hash=False)

    def incident_ends(self, vertex: str) -> Iterator[Tuple[Edge, int, EdgeEnd]]:
        """Yield (edge, end index, end) for every edge end at vertex."""
        for edge in self.edges:
            for index, end in enumerate(edge.ends()):
                if end.vertex == vertex:
                    yield edge, index, end

    def vectors_at(self, vertex: str) -> List[Vector]:
        return [end.vector for _, _, end in self.incident_ends(vertex)]

    def canonical_vertices(self) -> List[str]:
        """Vertices in canonical (name) order."""
        return sorted(self.vertices)

    def canonical_edges(self) -> List[Edge]:
        return sorted(self.edges, key=lambda e: e.name)


def format_graph(graph: GraphOfGroups) -> str:
    """Render a presentation as a canonical DSL document."""
    lines = [f"vertex {name}" for name in graph.vertices]
    for edge in graph.edges:
        (a0, b0), (a1, b1) = edge.end0.vector, edge.end1.vector
        lines.append(
            f"edge {edge.name} : {edge.end0.vertex} ({a0},{b0}) -> "
            f"{edge.end1.vertex} ({a1},{b1})"
        )
    return "\n".join(lines) + "\n"


def change_basis(graph: GraphOfGroups, vertex: str, basis: Matrix) -> GraphOfGroups:
    """
    Apply a GL_2(Z) basis change at one vertex.

    Args:
        graph: The presentation.
        vertex: Vertex whose attaching vectors are transformed.
        basis: Integer matrix ((a, b), (c, d)) with determinant +1 or -1.

    Returns:
        A new presentation with every vector w at vertex replaced by B w.
    """
    (a, b), (c, d) = basis
    if a * d - b * c not in (1, -1):
        raise ValueError(f"basis change {basis} is not in GL_2(Z)")

    def move(end: EdgeEnd) -> EdgeEnd:
        if end.vertex != vertex:
            return end
        x, y = end.vector
        return EdgeEnd(end.vertex, (a * x + b * y, c * x + d * y))

    edges = tuple(replace(e, end0=move(e.end0), end1=move(e.end1)) for e in graph.edges)
    return GraphOfGroups(graph.vertices, edges, dict(graph.locations))


def digest(text: str) -> str:
    """SHA-256 of a document's UTF-8 bytes."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
