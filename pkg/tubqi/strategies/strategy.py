"""Strategies: the terminal matches an extension induces, with exact height errors."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .extensions import Extension, TypeBijection
from ..model.logvalue import LogValue
from ..psets.classes import Match, PsetAnalysis, TypeRef

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Terminal:
    """An induced match with its height error; error None means undefined."""

    label: Match
    error: Optional[LogValue]
    entry: Tuple[int, int]
    pair: Tuple[TypeRef, TypeRef]

    @property
    def defined(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class LabelSummary:
    """Smallest and largest defined error of a label, and whether any is undefined."""

    low: Optional[LogValue]
    high: Optional[LogValue]
    undefined: bool

    def inside(self, other: "LabelSummary") -> bool:
        """Whether this defined range lies within other's."""
        if self.low is None:
            return True
        if other.low is None:
            return False
        return other.low <= self.low and self.high <= other.high


@dataclass(frozen=True)
class Strategy:
    root: Match
    extension: Extension
    terminals: Tuple[Terminal, ...]
    summary: Dict[Match, LabelSummary] = field(compare=False, hash=False)
    # every label pairs classes of the same height kind
    viable: bool = True

    @property
    def labels(self) -> FrozenSet[Match]:
        return frozenset(self.summary)

    def dominates(self, other: "Strategy") -> bool:
        """
        Whether this strategy asks for nothing other does not.

        True when every label of self is a label of other and, per label,
        the defined error range of self lies inside that of other.
        """
        if not self.labels <= other.labels:
            return False
        return all(s.inside(other.summary[label]) for label, s in self.summary.items())


def summarize(terminals: Tuple[Terminal, ...]) -> Dict[Match, LabelSummary]:
    """Per-label minimum, maximum and undefined flag, labels in canonical order."""
    grouped: Dict[Match, List[Terminal]] = {}
    for terminal in terminals:
        grouped.setdefault(terminal.label, []).append(terminal)

    summary = {}
    for label in sorted(grouped):
        errors = [t.error for t in grouped[label] if t.error is not None]
        summary[label] = LabelSummary(
            min(errors) if errors else None,
            max(errors) if errors else None,
            any(t.error is None for t in grouped[label]),
        )
    return summary


def _error(
    left: PsetAnalysis,
    right: PsetAnalysis,
    bijection: TypeBijection,
    pair: Tuple[TypeRef, TypeRef],
) -> Optional[LogValue]:
    (root_l, root_r), (ref_l, ref_r) = bijection.root, pair
    if left.line_count(bijection.left_vertex) < 3:
        return None
    heights = (left.potential(root_l), left.potential(ref_l), right.potential(root_r), right.potential(ref_r))
    if any(h is None for h in heights):
        return None
    phi_root_l, phi_l, phi_root_r, phi_r = heights
    return (phi_root_l - phi_l) - (phi_root_r - phi_r)


def build_strategy(left: PsetAnalysis, right: PsetAnalysis, extension: Extension) -> Strategy:
    """
    Collect the terminals of an extension.

    Each non-root pair ({[R'],i'} -> {[S'],j'}) of each nonzero entry e_ij
    becomes a terminal labelled ([R'],[S']). Its error is

        [phi_R(i) - phi_R'(i')] - [phi_S(j) - phi_S'(j')]

    when all four classes have bounded height change and the vertex has
    at least three lines, and undefined otherwise.

    Args:
        left: Analysis of the first group.
        right: Analysis of the second group.
        extension: An extension of some match.

    Returns:
        The strategy rooted at the extension's match.
    """
    terminals = []
    viable = True
    for i, j, bijection in extension.entries():
        for pair in bijection.others():
            label = Match(pair[0].class_id, pair[1].class_id)
            if left.cls(label.left).bounded != right.cls(label.right).bounded:
                viable = False
            terminals.append(Terminal(label, _error(left, right, bijection, pair), (i, j), pair))

    terminals_t = tuple(terminals)
    return Strategy(extension.match, extension, terminals_t, summarize(terminals_t), viable)


def prune_dominated(
    strategies: List[Strategy], check: Optional[Callable[[], None]] = None
) -> List[Strategy]:
    """
    Drop strategies dominated by another; among equals the first is kept.

    The survivors keep their original order. check is called once per
    strategy and may raise to abandon the pass.
    """
    kept: List[Strategy] = []
    for candidate in strategies:
        if check is not None:
            check()
        if any(k.dominates(candidate) for k in kept):
            continue
        kept = [k for k in kept if not candidate.dominates(k)]
        kept.append(candidate)
    return kept


@dataclass
class StrategySet:
    """A candidate: for each chosen match, a positive and a negative strategy."""

    positive: Dict[Match, Strategy] = field(default_factory=dict)
    negative: Dict[Match, Strategy] = field(default_factory=dict)
    bounded: Dict[Match, bool] = field(default_factory=dict)

    @property
    def matches(self) -> List[Match]:
        return sorted(self.positive)

    def assign(self, m: Match, positive: Strategy, negative: Strategy, bounded: bool) -> None:
        self.positive[m] = positive
        self.negative[m] = negative
        self.bounded[m] = bounded

    def remove(self, m: Match) -> None:
        del self.positive[m]
        del self.negative[m]
        del self.bounded[m]

    def copy(self) -> "StrategySet":
        return StrategySet(dict(self.positive), dict(self.negative), dict(self.bounded))

    def required(self) -> FrozenSet[Match]:
        """Every terminal label of every chosen strategy."""
        labels = set()
        for m in self.positive:
            labels |= self.positive[m].labels | self.negative[m].labels
        return frozenset(labels)

    def closed(self) -> bool:
        return self.required() <= set(self.positive)

    def covering(self, left_classes: int, right_classes: int) -> bool:
        return {m.left for m in self.positive} == set(range(1, left_classes + 1)) and {
            m.right for m in self.positive
        } == set(range(1, right_classes + 1))
