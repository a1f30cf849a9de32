"""Projective slopes and edge patterns."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple


@dataclass(frozen=True, order=True)
class ProjectiveSlope:
    """A line through the origin, as a primitive vector (a, b) with a > 0 or (0, 1)."""

    a: int
    b: int

    def vector(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        if self.a == 0:
            return "inf"
        return str(Fraction(self.b, self.a))


def slope_of(v: Sequence[int]) -> ProjectiveSlope:
    """
    Normalize a nonzero integer vector to its projective slope.

    Raises:
        ValueError: If v is the zero vector.
    """
    a, b = int(v[0]), int(v[1])
    if a == 0 and b == 0:
        raise ValueError("the zero vector has no slope")
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return ProjectiveSlope(a, b)


@dataclass(frozen=True)
class EdgePattern:
    """Distinct slopes of the edge lines at a vertex, in canonical order."""

    vertex: str
    slopes: Tuple[ProjectiveSlope, ...]

    def __len__(self) -> int:
        return len(self.slopes)

    def index(self, slope: ProjectiveSlope) -> int:
        return self.slopes.index(slope)


def edge_pattern(graph, vertex: str) -> EdgePattern:
    """Build the edge pattern of a vertex of a presentation."""
    slopes = sorted({slope_of(w) for w in graph.vectors_at(vertex)})
    return EdgePattern(vertex, tuple(slopes))
