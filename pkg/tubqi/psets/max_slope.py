"""Maximum height gain per vertex step along closed walks of the tree of P-sets."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Dict, List, Optional

import networkx as nx

from .classes import PsetAnalysis
from .slope_graph import LineNode
from ..model.logvalue import ZERO, LogValue

logger = logging.getLogger(__name__)


@total_ordering
@dataclass(frozen=True, eq=False)
class SlopeRatio:
    """The exact ratio total / steps, for a positive number of steps."""

    total: LogValue
    steps: int

    def __post_init__(self):
        if self.steps <= 0:
            raise ValueError(f"steps must be positive, got {self.steps}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, SlopeRatio):
            return NotImplemented
        return self.total * other.steps == other.total * self.steps

    def __lt__(self, other: "SlopeRatio") -> bool:
        return self.total * other.steps < other.total * self.steps

    def __hash__(self) -> int:
        # equal ratios have equal exact values, or both have none
        return hash(self.value())

    def value(self) -> Optional[Fraction]:
        """Exact height per step when the total is a dyadic height."""
        h = self.total.height()
        return None if h is None else h / self.steps

    def render(self) -> str:
        exact = self.value()
        if exact is not None:
            return str(exact)
        return f"{float(self.total) / self.steps:.6f}"

    def __str__(self) -> str:
        return self.render()


def step_graph(analysis: PsetAnalysis) -> nx.DiGraph:
    """
    Transition graph on (vertex, arriving line) states.

    From a vertex plane entered along line s, a walk leaves along another
    line s' and crosses the P-set of s' to any vertex type (w, t) of the
    same class, gaining potential(w, t) - potential(v, s'). Parallel
    transitions keep only the largest gain.
    """
    transitions = nx.DiGraph()
    transitions.add_nodes_from(analysis.type_refs)
    for state in analysis.type_refs:
        for slope in analysis.patterns[state.vertex].slopes:
            if slope == state.slope:
                continue
            exit_node = LineNode(state.vertex, slope)
            pset = analysis.cls(analysis.type_refs[exit_node].class_id)
            for target in pset.nodes:
                gain = pset.potentials[target] - pset.potentials[exit_node]
                current = transitions.get_edge_data(state, target)
                if current is None or current["gain"] < gain:
                    transitions.add_edge(state, target, gain=gain)
    return transitions


def _karp(transitions: nx.DiGraph) -> Optional[SlopeRatio]:
    nodes = list(transitions.nodes)
    n = len(nodes)
    if n == 0:
        return None
    # best[k][v]: largest total over walks of exactly k transitions ending at v
    best: List[Dict[LineNode, Optional[LogValue]]] = [{v: ZERO for v in nodes}]
    for _ in range(n):
        previous = best[-1]
        layer: Dict[LineNode, Optional[LogValue]] = {v: None for v in nodes}
        for u, v, data in transitions.edges(data=True):
            if previous[u] is None:
                continue
            candidate = previous[u] + data["gain"]
            if layer[v] is None or layer[v] < candidate:
                layer[v] = candidate
        best.append(layer)

    result: Optional[SlopeRatio] = None
    for v in nodes:
        if best[n][v] is None:
            continue
        worst: Optional[SlopeRatio] = None
        for k in range(n):
            if best[k][v] is None:
                continue
            ratio = SlopeRatio(best[n][v] - best[k][v], n - k)
            if worst is None or ratio < worst:
                worst = ratio
        if worst is not None and (result is None or result < worst):
            result = worst
    return result


def max_slope(analysis: PsetAnalysis) -> Optional[SlopeRatio]:
    """
    Compute the maximum slope of geodesics in the tree of P-sets.

    Args:
        analysis: Analysis of a presentation.

    Returns:
        The maximum mean gain per vertex step over closed walks, or None
        when some vertex has fewer than three lines or some class has
        unbounded height change.
    """
    if any(len(p) < 3 for p in analysis.patterns.values()) or not analysis.all_bounded():
        return None
    result = _karp(step_graph(analysis))
    logger.debug(f"Max slope {result}")
    return result
