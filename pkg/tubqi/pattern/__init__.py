"""Projective geometry of edge patterns."""

from .slopes import EdgePattern, ProjectiveSlope, edge_pattern, slope_of
from .moebius import (
    Moebius,
    linear_equivalences,
    pattern_classes,
    symmetry_group,
    through_triples,
)
from .gram import Gram, edge_height, length_sq, symmetric_gram

__all__ = [
    "EdgePattern",
    "ProjectiveSlope",
    "edge_pattern",
    "slope_of",
    "Moebius",
    "linear_equivalences",
    "pattern_classes",
    "symmetry_group",
    "through_triples",
    "Gram",
    "edge_height",
    "length_sq",
    "symmetric_gram",
]
