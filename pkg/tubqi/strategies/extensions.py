"""Matches, induced type bijections and extensions."""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from ..cache.memory import MemoryCache
from ..pattern.moebius import Moebius, linear_equivalences
from ..pattern.slopes import EdgePattern
from ..psets.classes import Match, PsetAnalysis, TypeRef

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class TypeBijection:
    """Bijection between the types adjacent to two vertex types.

    pairs maps each (left type) to a (right type) and includes the root
    pairing; witness is a linear equivalence of the two edge patterns
    inducing it.
    """

    pairs: Tuple[Tuple[TypeRef, TypeRef], ...]
    root: Tuple[TypeRef, TypeRef]
    witness: Moebius
    left_vertex: str
    right_vertex: str

    def others(self) -> Iterator[Tuple[TypeRef, TypeRef]]:
        """Pairs other than the root pairing."""
        return (p for p in self.pairs if p != self.root)


Cell = Tuple[int, int]


@dataclass(frozen=True)
class Extension:
    """Matrix of entries e_ij over the types of a match; None is a zero entry."""

    match: Match
    matrix: Tuple[Tuple[Optional[TypeBijection], ...], ...]

    def entries(self) -> Iterator[Tuple[int, int, TypeBijection]]:
        """Nonzero entries as (i, j, bijection) with 1-based type indices."""
        for i, row in enumerate(self.matrix, start=1):
            for j, entry in enumerate(row, start=1):
                if entry is not None:
                    yield i, j, entry

    def support(self) -> Tuple[Cell, ...]:
        return tuple((i, j) for i, j, _ in self.entries())

    def covers(self) -> bool:
        """At least one nonzero entry in every row and every column."""
        rows = {i for i, _ in self.support()}
        cols = {j for _, j in self.support()}
        width = len(self.matrix[0]) if self.matrix else 0
        return len(rows) == len(self.matrix) and len(cols) == width


class EquivalenceOracle:
    """Memoized linear equivalences and entry bijections for one pair of groups."""

    def __init__(self, left: PsetAnalysis, right: PsetAnalysis, cache: Optional[MemoryCache] = None):
        """
        Initialize the oracle.

        Args:
            left: Analysis of the first group.
            right: Analysis of the second group.
            cache: Shared memo; equivalences are keyed by slopes only, so
                one cache can serve many comparisons.
        """
        self.left = left
        self.right = right
        self.cache = cache or MemoryCache()
        self._entries: Dict[Tuple[Match, int, int], List[TypeBijection]] = {}

    def equivalences(self, p: EdgePattern, q: EdgePattern) -> List[Moebius]:
        key = ("equivalences", p.slopes, q.slopes)
        return self.cache.get_or_compute(key, lambda: linear_equivalences(p, q))

    def equivalent(self, p: EdgePattern, q: EdgePattern) -> bool:
        return bool(self.equivalences(p, q))

    def entry_bijections(self, m: Match, i: int, j: int) -> List[TypeBijection]:
        key = (m, i, j)
        if key not in self._entries:
            self._entries[key] = self._compute_entries(m, i, j)
        return self._entries[key]

    def _compute_entries(self, m: Match, i: int, j: int) -> List[TypeBijection]:
        x = self.left.cls(m.left).node(i)
        y = self.right.cls(m.right).node(j)
        p = self.left.patterns[x.vertex]
        q = self.right.patterns[y.vertex]
        if len(p) != len(q):
            return []

        root = (TypeRef(m.left, i), TypeRef(m.right, j))
        found: Dict[Tuple[Tuple[TypeRef, TypeRef], ...], Moebius] = {}
        for witness in self.equivalences(p, q):
            if witness(x.slope) != y.slope:
                continue
            pairs = tuple(
                sorted(
                    (self.left.ref(x.vertex, s), self.right.ref(y.vertex, witness(s)))
                    for s in p.slopes
                )
            )
            found.setdefault(pairs, witness)

        return sorted(
            TypeBijection(pairs, root, witness, x.vertex, y.vertex)
            for pairs, witness in found.items()
        )


def entry_bijections(oracle: EquivalenceOracle, m: Match, i: int, j: int) -> List[TypeBijection]:
    """
    Bijections e_ij that a linear equivalence can induce for a match.

    Args:
        oracle: Equivalence oracle for the two groups.
        m: The match.
        i: Type index in the left class.
        j: Type index in the right class.

    Returns:
        Distinct bijections containing the pairing {[R],i} -> {[S],j}, in
        canonical order; empty when the vertex patterns are not equivalent
        or no equivalence carries the root slope to the root slope.
    """
    return oracle.entry_bijections(m, i, j)


def _options(oracle: EquivalenceOracle, m: Match) -> List[List[List[TypeBijection]]]:
    rows = oracle.left.cls(m.left).size
    cols = oracle.right.cls(m.right).size
    return [
        [oracle.entry_bijections(m, i, j) for j in range(1, cols + 1)]
        for i in range(1, rows + 1)
    ]


def enumerate_extensions(oracle: EquivalenceOracle, m: Match) -> Iterator[Extension]:
    """
    Lazily enumerate every extension of a match.

    Cells are filled in row-major order, zero first. A zero is refused
    when it would leave a finished row or column empty.
    """
    options = _options(oracle, m)
    rows, cols = len(options), len(options[0])
    matrix: List[List[Optional[TypeBijection]]] = [[None] * cols for _ in range(rows)]

    def fill(k: int) -> Iterator[Extension]:
        if k == rows * cols:
            yield Extension(m, tuple(tuple(r) for r in matrix))
            return
        i, j = divmod(k, cols)
        row_empty = all(e is None for e in matrix[i][:j])
        col_empty = all(matrix[r][j] is None for r in range(i))
        if not ((j == cols - 1 and row_empty) or (i == rows - 1 and col_empty)):
            matrix[i][j] = None
            yield from fill(k + 1)
        for bijection in options[i][j]:
            matrix[i][j] = bijection
            yield from fill(k + 1)
        matrix[i][j] = None

    yield from fill(0)


def minimal_supports(
    options: Sequence[Sequence[Sequence[TypeBijection]]],
    check: Optional[Callable[[], None]] = None,
) -> Iterator[Tuple[Cell, ...]]:
    """
    Lazily enumerate the minimal row/column covers by cells with an option.

    A cover is minimal when every chosen cell is alone in its row or alone
    in its column. Covers come smallest first, and lexicographically within
    one size, so on a full square grid the identity comes first.

    Args:
        options: Bijection options per cell.
        check: Called at every step of the enumeration; it may raise to
            abandon it.

    Yields:
        Sorted tuples of 1-based cells.
    """
    rows, cols = len(options), len(options[0])
    cells = [(i, j) for i in range(rows) for j in range(cols) if options[i][j]]
    if len({i for i, _ in cells}) < rows or len({j for _, j in cells}) < cols:
        return

    last_in_row: Dict[int, int] = {}
    last_in_col: Dict[int, int] = {}
    for k, (i, j) in enumerate(cells):
        last_in_row[i] = k
        last_in_col[j] = k

    row_count = [0] * rows
    col_count = [0] * cols
    chosen: List[Cell] = []

    def fits(i: int, j: int) -> bool:
        # counts only grow, so a cell that loses minimality never regains it
        if row_count[i] and col_count[j]:
            return False
        for a, b in chosen:
            if a == i and col_count[b] > 1:
                return False
            if b == j and row_count[a] > 1:
                return False
        return True

    def grow(k: int, size: int) -> Iterator[Tuple[Cell, ...]]:
        if check is not None:
            check()
        left = size - len(chosen)
        open_rows = [i for i in range(rows) if not row_count[i]]
        open_cols = [j for j in range(cols) if not col_count[j]]
        if left == 0:
            if not open_rows and not open_cols:
                yield tuple((i + 1, j + 1) for i, j in chosen)
            return
        if k == len(cells) or max(len(open_rows), len(open_cols)) > left:
            return
        if any(last_in_row[i] < k for i in open_rows) or any(last_in_col[j] < k for j in open_cols):
            return

        i, j = cells[k]
        if fits(i, j):
            chosen.append((i, j))
            row_count[i] += 1
            col_count[j] += 1
            yield from grow(k + 1, size)
            row_count[i] -= 1
            col_count[j] -= 1
            chosen.pop()
        yield from grow(k + 1, size)

    for size in range(max(rows, cols), rows + cols):
        yield from grow(0, size)


def irreducible_extensions(
    oracle: EquivalenceOracle, m: Match, check: Optional[Callable[[], None]] = None
) -> Iterator[Extension]:
    """
    Extensions whose support is a minimal row/column cover.

    Every extension contains one of these on a subset of its cells, hence
    with a subset of its terminals. check is passed to the cover
    enumeration and also called once per extension.
    """
    options = _options(oracle, m)
    rows, cols = len(options), len(options[0])
    for support in minimal_supports(options, check):
        choices = [options[i - 1][j - 1] for i, j in support]
        for picked in itertools.product(*choices):
            if check is not None:
                check()
            matrix: List[List[Optional[TypeBijection]]] = [[None] * cols for _ in range(rows)]
            for (i, j), bijection in zip(support, picked):
                matrix[i - 1][j - 1] = bijection
            yield Extension(m, tuple(tuple(r) for r in matrix))
