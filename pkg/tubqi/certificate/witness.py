"""Replay the error bookkeeping of the tree construction on a finite ball."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..feasibility.solver import Assignment
from ..feasibility.system import PROSE, Var
from ..model.logvalue import ZERO, LogValue
from ..psets.classes import Match
from ..strategies.strategy import Strategy, StrategySet

logger = logging.getLogger(__name__)

State = Tuple[Match, Optional[LogValue]]


@dataclass
class BallReport:
    radius: int
    nodes_visited: int = 0
    ranges: Dict[Match, Tuple[LogValue, LogValue]] = field(default_factory=dict)
    max_error: LogValue = ZERO
    passed: bool = True
    failure: str = ""
    path: List[Match] = field(default_factory=list)


def _choose(ss: StrategySet, assignment: Assignment, m: Match, error: Optional[LogValue], convention: str) -> Strategy:
    low_side = error is None or error <= assignment[Var("M", m)]
    if convention == PROSE:
        low_side = not low_side
    return ss.positive[m] if low_side else ss.negative[m]


def _start(ss: StrategySet, assignment: Assignment, m: Match) -> Optional[LogValue]:
    return assignment[Var("M", m)] if ss.bounded[m] else None


def witness_ball(
    ss: StrategySet, assignment: Assignment, radius: int, convention: str = "example"
) -> BallReport:
    """
    Walk the type-level tree of matches to the given depth.

    Every match starts at its M value. At a bounded match with running
    error e the positive strategy is used when e <= M and the negative
    one otherwise; defined terminals move the error by E and undefined
    ones reset it to the child's M. Every visited bounded match must keep
    its error within [L, U].

    Args:
        ss: A closed strategy set.
        assignment: A feasible assignment of its system.
        radius: Depth of the walk.
        convention: Constraint-role convention the assignment was solved under.

    Returns:
        The report; on failure it names the offending path.
    """
    report = BallReport(radius)
    frontier: Dict[State, List[Match]] = {(m, _start(ss, assignment, m)): [m] for m in ss.matches}

    for depth in range(radius + 1):
        following: Dict[State, List[Match]] = {}
        for (m, error), path in frontier.items():
            report.nodes_visited += 1
            if error is not None:
                low, high = assignment[Var("L", m)], assignment[Var("U", m)]
                if not low <= error <= high:
                    report.passed = False
                    report.failure = f"error {error} at {m} outside [{low}, {high}] at depth {depth}"
                    report.path = path
                    logger.error(f"Witness walk failed: {report.failure}")
                    return report
                seen_low, seen_high = report.ranges.get(m, (error, error))
                report.ranges[m] = (min(seen_low, error), max(seen_high, error))
                report.max_error = max(report.max_error, abs(error))

            if depth == radius:
                continue
            strategy = _choose(ss, assignment, m, error, convention)
            for terminal in strategy.terminals:
                child = terminal.label
                if terminal.error is not None and error is not None:
                    child_error: Optional[LogValue] = error + terminal.error
                else:
                    child_error = _start(ss, assignment, child)
                following.setdefault((child, child_error), path + [child])
        frontier = following

    logger.debug(f"Witness walk of radius {radius} visited {report.nodes_visited} states")
    return report
