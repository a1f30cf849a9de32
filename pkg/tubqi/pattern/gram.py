"""Symmetric metrics on vertex planes and exact edge heights."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .moebius import Moebius, symmetry_group
from .slopes import EdgePattern
from ..model.logvalue import LogValue
from ..utils.exceptions import PatternError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Gram:
    """Positive definite symmetric matrix [[g11, g12], [g12, g22]] over Q."""

    g11: Fraction
    g12: Fraction
    g22: Fraction

    def __post_init__(self):
        for name in ("g11", "g12", "g22"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.g11 <= 0 or self.det <= 0:
            raise ValueError(f"Gram {self} is not positive definite")

    @classmethod
    def identity(cls) -> "Gram":
        return cls(Fraction(1), Fraction(0), Fraction(1))

    @property
    def det(self) -> Fraction:
        return self.g11 * self.g22 - self.g12 * self.g12

    def scaled(self, c) -> "Gram":
        c = Fraction(c)
        if c <= 0:
            raise ValueError(f"scale must be positive, got {c}")
        return Gram(self.g11 * c, self.g12 * c, self.g22 * c)

    def canonical(self) -> "Gram":
        """The positive multiple of self that is a primitive integer matrix."""
        entries = (self.g11, self.g12, self.g22)
        scale = lcm(*(x.denominator for x in entries))
        ints = [int(x * scale) for x in entries]
        g = gcd(*ints)
        return Gram(*(Fraction(x, g) for x in ints))

    def transform(self, m: Moebius) -> "Gram":
        """The pulled-back form M^T g M."""
        a, b, c, d = m.a, m.b, m.c, m.d
        g11, g12, g22 = self.g11, self.g12, self.g22
        return Gram(
            a * a * g11 + 2 * a * c * g12 + c * c * g22,
            a * b * g11 + (a * d + b * c) * g12 + c * d * g22,
            b * b * g11 + 2 * b * d * g12 + d * d * g22,
        )

    def __str__(self) -> str:
        return f"[[{self.g11},{self.g12}],[{self.g12},{self.g22}]]"


def length_sq(g: Gram, w: Sequence[int]) -> Fraction:
    """
    Squared length w^T g w of an attaching vector.

    Raises:
        ValueError: If w is the zero vector.
    """
    x, y = w
    if x == 0 and y == 0:
        raise ValueError("the zero vector has no length")
    return g.g11 * x * x + 2 * g.g12 * x * y + g.g22 * y * y


def _two_line_gram(pattern: EdgePattern) -> Gram:
    (u1, u2), (w1, w2) = (s.vector() for s in pattern.slopes)
    # P^-T P^-1 for P = [u | w], up to the factor 1/det(P)^2
    return Gram(w2 * w2 + u2 * u2, -(w2 * w1 + u2 * u1), w1 * w1 + u1 * u1)


def symmetric_gram(pattern: EdgePattern, group: Optional[Sequence[Moebius]] = None) -> Gram:
    """
    Choose the metric that makes a vertex's edge pattern as symmetric as possible.

    Two-line patterns get the metric in which the primitive slope vectors
    are orthonormal. Larger patterns average M^T M / |det M| over their
    projective symmetry group.

    Args:
        pattern: The edge pattern of a vertex.
        group: Its symmetry group, when already known.

    Returns:
        The Gram matrix, canonically scaled.

    Raises:
        PatternError: If the pattern has fewer than two lines.
    """
    if len(pattern) < 2:
        raise PatternError(f"pattern at {pattern.vertex!r} has fewer than 2 lines")
    if len(pattern) == 2:
        return _two_line_gram(pattern).canonical()

    if group is None:
        group = symmetry_group(pattern)
    if len(group) == 1 and len(pattern) >= 5:
        logger.warning(
            f"Pattern at {pattern.vertex!r} has no symmetries; "
            "its metric is not determined by the pattern"
        )

    g11 = g12 = g22 = Fraction(0)
    for m in group:
        scale = Fraction(1, abs(m.det))
        g11 += (m.a * m.a + m.c * m.c) * scale
        g12 += (m.a * m.b + m.c * m.d) * scale
        g22 += (m.b * m.b + m.d * m.d) * scale
    n = len(group)
    return Gram(g11 / n, g12 / n, g22 / n).canonical()


def edge_height(g0: Gram, g1: Gram, w0: Sequence[int], w1: Sequence[int]) -> LogValue:
    """
    Height change across an edge, from end 0 to end 1.

    Args:
        g0: Metric at the end-0 vertex.
        g1: Metric at the end-1 vertex.
        w0: Attaching vector at end 0.
        w1: Attaching vector at end 1.

    Returns:
        The LogValue 1/2 * log2(l0^2 / l1^2).
    """
    return LogValue(length_sq(g0, w0) / length_sq(g1, w1))
