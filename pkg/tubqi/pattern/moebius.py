"""Projective transformations of the rational projective line.

Every map here is determined by where it sends three distinct rational
slopes, so all of PGL_2 that can ever matter is PGL_2(Q) and no
algebraic numbers are needed.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .slopes import EdgePattern, ProjectiveSlope, slope_of
from ..utils.exceptions import PatternError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Moebius:
    """An element of PGL_2(Q), stored as a primitive integer matrix ((a, b), (c, d)).

    The first nonzero entry is positive, so equal projective maps have
    equal representatives.
    """

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_entries(cls, a, b, c, d) -> "Moebius":
        entries = [Fraction(x) for x in (a, b, c, d)]
        if entries[0] * entries[3] - entries[1] * entries[2] == 0:
            raise ValueError("singular matrix is not a projective transformation")
        scale = lcm(*(x.denominator for x in entries))
        ints = [int(x * scale) for x in entries]
        g = gcd(*ints)
        ints = [x // g for x in ints]
        lead = next(x for x in ints if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
        return cls(*ints)

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __call__(self, slope: ProjectiveSlope) -> ProjectiveSlope:
        x, y = slope.vector()
        return slope_of((self.a * x + self.b * y, self.c * x + self.d * y))

    def compose(self, other: "Moebius") -> "Moebius":
        """The map self after other."""
        return Moebius.from_entries(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Moebius":
        return Moebius.from_entries(self.d, -self.b, -self.c, self.a)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def _frame(points: Sequence[ProjectiveSlope]) -> Tuple[Fraction, ...]:
    """Matrix sending [1:0], [0:1], [1:1] to the three given slopes."""
    (x1, y1), (x2, y2), (x3, y3) = (p.vector() for p in points)
    det = Fraction(x1 * y2 - x2 * y1)
    if det == 0:
        raise ValueError("frame slopes must be distinct")
    alpha = (x3 * y2 - x2 * y3) / det
    beta = (x1 * y3 - x3 * y1) / det
    if alpha == 0 or beta == 0:
        raise ValueError("frame slopes must be distinct")
    return (alpha * x1, beta * x2, alpha * y1, beta * y2)


def through_triples(
    source: Sequence[ProjectiveSlope], target: Sequence[ProjectiveSlope]
) -> Moebius:
    """The unique projective map sending source[k] to target[k] for k = 0, 1, 2."""
    sa, sb, sc, sd = _frame(source)
    ta, tb, tc, td = _frame(target)
    det = sa * sd - sb * sc
    ia, ib, ic, id_ = sd / det, -sb / det, -sc / det, sa / det
    return Moebius.from_entries(
        ta * ia + tb * ic,
        ta * ib + tb * id_,
        tc * ia + td * ic,
        tc * ib + td * id_,
    )


def _carries(m: Moebius, source: EdgePattern, target: EdgePattern) -> bool:
    return {m(s) for s in source.slopes} == set(target.slopes)


def _triple_maps(p: EdgePattern, q: EdgePattern) -> List[Moebius]:
    base = p.slopes[:3]
    found = set()
    for triple in itertools.permutations(q.slopes, 3):
        m = through_triples(base, triple)
        if _carries(m, p, q):
            found.add(m)
    return sorted(found)


def _two_line_maps(p: EdgePattern, q: EdgePattern) -> List[Moebius]:
    (u1, u2), (w1, w2) = (s.vector() for s in p.slopes)
    det = Fraction(u1 * w2 - w1 * u2)
    # inverse of the matrix with columns u, w
    inv = (w2 / det, -w1 / det, -u2 / det, u1 / det)
    maps = set()
    for first, second in (q.slopes, tuple(reversed(q.slopes))):
        (x1, y1), (x2, y2) = first.vector(), second.vector()
        maps.add(
            Moebius.from_entries(
                x1 * inv[0] + x2 * inv[2],
                x1 * inv[1] + x2 * inv[3],
                y1 * inv[0] + y2 * inv[2],
                y1 * inv[1] + y2 * inv[3],
            )
        )
    return sorted(maps)


def symmetry_group(pattern: EdgePattern) -> List[Moebius]:
    """
    Compute the projective symmetries of a pattern with at least three lines.

    Each symmetry is the unique map through some ordered triple of the
    pattern's slopes; the maps that preserve the slope set are kept.

    Raises:
        PatternError: If the pattern has fewer than three lines.
    """
    if len(pattern) < 3:
        raise PatternError(
            f"symmetry group needs at least 3 lines, {pattern.vertex!r} has {len(pattern)}"
        )
    group = _triple_maps(pattern, pattern)
    logger.debug(f"Symmetry group of {pattern.vertex!r} has order {len(group)}")
    return group


def linear_equivalences(p: EdgePattern, q: EdgePattern) -> List[Moebius]:
    """
    All projective maps carrying the slopes of p bijectively onto those of q.

    Two-line patterns get both bijections of the two families; larger
    patterns are handled by triple enumeration. An empty list means the
    patterns are not linearly equivalent.
    """
    if len(p) != len(q):
        return []
    if len(p) < 2:
        raise PatternError(f"pattern at {p.vertex!r} has fewer than 2 lines")
    if len(p) == 2:
        return _two_line_maps(p, q)
    return _triple_maps(p, q)


def pattern_classes(
    patterns: Iterable[EdgePattern],
    equivalent: Optional[Callable[[EdgePattern, EdgePattern], bool]] = None,
) -> List[List[EdgePattern]]:
    """
    Partition patterns into linear-equivalence classes, in first-seen order.

    Args:
        patterns: Patterns to classify.
        equivalent: Equivalence test to use, e.g. a memoised one; defaults
            to computing linear_equivalences directly.
    """
    equivalent = equivalent or (lambda p, q: bool(linear_equivalences(p, q)))
    classes: List[List[EdgePattern]] = []
    for pattern in patterns:
        for members in classes:
            if equivalent(pattern, members[0]):
                members.append(pattern)
                break
        else:
            classes.append([pattern])
    return classes
