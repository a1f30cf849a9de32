"""Backtracking search for a consistent set of strategies."""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .extensions import EquivalenceOracle, irreducible_extensions
from .strategy import Strategy, StrategySet, build_strategy, prune_dominated
from ..feasibility.solver import Assignment, Feasible, FeasibilityTracker, is_feasible, solve
from ..feasibility.system import (
    CONVENTIONS,
    EXAMPLE,
    ConstraintSystem,
    bounds_constraints,
    build_system,
    strategy_constraints,
)
from ..model.logvalue import ZERO, LogValue, total
from ..pattern.moebius import pattern_classes
from ..psets.classes import Match, PsetAnalysis

logger = logging.getLogger(__name__)

QUASI_ISOMETRIC = "quasi-isometric"
NOT_QUASI_ISOMETRIC = "not-quasi-isometric"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchLimits:
    """Resource caps; None means unlimited."""

    max_candidates: Optional[int] = None
    timeout: Optional[float] = None


@dataclass
class SearchStatistics:
    matches_considered: int = 0
    extensions_enumerated: int = 0
    strategies_built: int = 0
    candidates_examined: int = 0
    partial_checks: int = 0
    memo_hits: int = 0
    cache_hits: int = 0
    cache_misses: int = 0
    elapsed: float = 0.0

    def as_dict(self, include_runtime: bool = False) -> Dict[str, float]:
        """Counters; timing and cache counters vary between runs and are opt-in."""
        stats = asdict(self)
        if not include_runtime:
            for key in ("elapsed", "cache_hits", "cache_misses"):
                del stats[key]
        return stats


@dataclass
class Decision:
    """Outcome of a comparison.

    A quasi-isometric verdict carries the strategy set, its system and a
    feasible assignment; the other verdicts carry a reason.
    """

    verdict: str
    statistics: SearchStatistics = field(default_factory=SearchStatistics)
    strategy_set: Optional[StrategySet] = None
    system: Optional[ConstraintSystem] = None
    assignment: Optional[Assignment] = None
    reason: str = ""
    convention: str = EXAMPLE

    @property
    def quasi_isometric(self) -> bool:
        return self.verdict == QUASI_ISOMETRIC


class _LimitReached(Exception):
    pass


def _ordering(strategy: Strategy) -> Tuple[LogValue, int, LogValue]:
    """Smallest worst error first, then fewest labels, then narrowest ranges."""
    errors = [abs(t.error) for t in strategy.terminals if t.error is not None]
    spread = total(s.high - s.low for s in strategy.summary.values() if s.low is not None)
    return max(errors, default=ZERO), len(strategy.labels), spread


class CandidateSearch:
    """Enumerate closed, covering strategy sets, most promising first."""

    def __init__(
        self,
        left: PsetAnalysis,
        right: PsetAnalysis,
        oracle: Optional[EquivalenceOracle] = None,
        limits: Optional[SearchLimits] = None,
        convention: str = EXAMPLE,
    ):
        """
        Initialize the search.

        Args:
            left: Analysis of the first group.
            right: Analysis of the second group.
            oracle: Equivalence oracle; a private one is made if omitted.
            limits: Resource caps.
            convention: Constraint-role convention for the systems.
        """
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.left = left
        self.right = right
        self.oracle = oracle or EquivalenceOracle(left, right)
        self.limits = limits or SearchLimits()
        self.convention = convention
        self.stats = SearchStatistics()
        self._strategies: Dict[Match, List[Strategy]] = {}
        self._roles: Dict[Match, Tuple[List[Strategy], List[Strategy]]] = {}
        self._deadline: Optional[float] = None
        self._tracker = FeasibilityTracker()
        self._chosen: Dict[Match, Tuple[int, int]] = {}
        self._failed: Set[FrozenSet[Tuple[Match, int, int]]] = set()

    def prefilter(self) -> Optional[str]:
        """Reason the groups cannot be quasi-isometric, or None if the quick checks pass."""
        left_patterns = [self.left.patterns[v] for v in sorted(self.left.patterns)]
        right_patterns = [self.right.patterns[v] for v in sorted(self.right.patterns)]
        on_left = {id(p) for p in left_patterns}
        on_right = {id(p) for p in right_patterns}
        for members in pattern_classes(left_patterns + right_patterns, self.oracle.equivalent):
            if not any(id(p) in on_right for p in members):
                side = "first"
            elif not any(id(p) in on_left for p in members):
                side = "second"
            else:
                continue
            return (
                f"edge pattern of {members[0].vertex!r} in the {side} group is not "
                "linearly equivalent to any pattern of the other"
            )

        for side, ours, theirs in (
            ("first", self.left.classes, self.right.classes),
            ("second", self.right.classes, self.left.classes),
        ):
            kinds = {c.bounded for c in theirs}
            for c in ours:
                if c.bounded not in kinds:
                    kind = "bounded" if c.bounded else "unbounded"
                    return f"class {c.id} of the {side} group is {kind}; the other group has no such class"
        return None

    def strategies(self, m: Match) -> List[Strategy]:
        """
        Viable, non-dominated strategies for a match, most promising first.

        Ties keep the canonical enumeration order.
        """
        if m not in self._strategies:
            self.stats.matches_considered += 1
            built = []
            for extension in irreducible_extensions(self.oracle, m, self._check):
                self.stats.extensions_enumerated += 1
                strategy = build_strategy(self.left, self.right, extension)
                self.stats.strategies_built += 1
                if strategy.viable:
                    built.append(strategy)
            kept = prune_dominated(built, self._check)
            self._strategies[m] = sorted(kept, key=_ordering)
            logger.debug(f"Match {m}: {len(built)} viable strategies, {len(kept)} kept")
        return self._strategies[m]

    def role_options(self, m: Match) -> Tuple[List[Strategy], List[Strategy]]:
        """Strategies of a match that are consistent on their own as positive, and as negative."""
        if m not in self._roles:
            options = self.strategies(m)
            self._roles[m] = (
                [s for s in options if self._consistent_alone(m, "positive", s)],
                [s for s in options if self._consistent_alone(m, "negative", s)],
            )
            logger.debug(
                f"Match {m}: {len(self._roles[m][0])} positive and {len(self._roles[m][1])} negative options"
            )
        return self._roles[m]

    def _consistent_alone(self, m: Match, role: str, strategy: Strategy) -> bool:
        self._check()
        system = ConstraintSystem()
        for match in sorted({m} | strategy.labels):
            if self._bounded(match):
                for constraint in bounds_constraints(match):
                    system.append(constraint)
        for constraint in strategy_constraints(m, role, strategy, self.convention):
            system.append(constraint)
        return is_feasible(system)

    def _bounded(self, m: Match) -> bool:
        return self.left.cls(m.left).bounded

    def _compatible(self, m: Match) -> bool:
        return self.left.cls(m.left).bounded == self.right.cls(m.right).bounded

    def _next_choices(self, ss: StrategySet) -> Optional[List[Match]]:
        """Matches to branch on next; an empty list is a dead end, None means complete."""
        pending = sorted(ss.required() - set(ss.positive))
        if pending:
            return [pending[0]] if self._compatible(pending[0]) else []

        covered_left = {m.left for m in ss.positive}
        for c in self.left.classes:
            if c.id not in covered_left:
                return [m for m in (Match(c.id, d.id) for d in self.right.classes) if self._compatible(m)]
        covered_right = {m.right for m in ss.positive}
        for d in self.right.classes:
            if d.id not in covered_right:
                return [m for m in (Match(c.id, d.id) for c in self.left.classes) if self._compatible(m)]
        return None

    def _check(self) -> None:
        cap = self.limits.max_candidates
        if cap is not None and self.stats.candidates_examined >= cap:
            raise _LimitReached(f"candidate limit of {cap} reached")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise _LimitReached(f"time limit of {self.limits.timeout}s reached")

    def _tick(self) -> None:
        self._check()
        self.stats.candidates_examined += 1

    def _extend(self, ss: StrategySet) -> Optional[ConstraintSystem]:
        choices = self._next_choices(ss)
        if choices is None:
            return build_system(ss, self.convention)

        state = frozenset((m, *picked) for m, picked in self._chosen.items())
        if state in self._failed:
            self.stats.memo_hits += 1
            return None

        for m in choices:
            positives, negatives = self.role_options(m)
            bounds = bounds_constraints(m) if self._bounded(m) else []
            for p, positive in enumerate(positives):
                self._check()
                self.stats.partial_checks += 1
                if not self._tracker.push(bounds + strategy_constraints(m, "positive", positive, self.convention)):
                    continue
                # the same strategy in both roles first
                order = sorted(range(len(negatives)), key=lambda n: negatives[n] is not positive)
                for n in order:
                    self._tick()
                    self.stats.partial_checks += 1
                    negative = negatives[n]
                    if not self._tracker.push(strategy_constraints(m, "negative", negative, self.convention)):
                        continue
                    ss.assign(m, positive, negative, self._bounded(m))
                    self._chosen[m] = (p, n)
                    found = self._extend(ss)
                    if found is not None:
                        return found
                    del self._chosen[m]
                    ss.remove(m)
                    self._tracker.pop()
                self._tracker.pop()

        self._failed.add(state)
        return None

    def run(self) -> Decision:
        """
        Search for a consistent set of strategies.

        Returns:
            A Decision. Hitting a resource cap gives an inconclusive
            verdict, never a negative one.
        """
        started = time.monotonic()
        if self.limits.timeout is not None:
            self._deadline = started + self.limits.timeout

        decision = self._decide()
        self.stats.elapsed = time.monotonic() - started
        cache_stats = self.oracle.cache.get_stats()
        self.stats.cache_hits = cache_stats["hits"]
        self.stats.cache_misses = cache_stats["misses"]
        decision.statistics = self.stats
        decision.convention = self.convention
        logger.info(f"Verdict {decision.verdict} after {self.stats.candidates_examined} candidates")
        return decision

    def _decide(self) -> Decision:
        reason = self.prefilter()
        if reason is not None:
            logger.info(f"Rejected before enumeration: {reason}")
            return Decision(NOT_QUASI_ISOMETRIC, reason=reason)

        ss = StrategySet()
        self._tracker = FeasibilityTracker()
        self._chosen.clear()
        self._failed.clear()
        try:
            system = self._extend(ss)
        except _LimitReached as e:
            return Decision(INCONCLUSIVE, reason=str(e))

        if system is None:
            return Decision(NOT_QUASI_ISOMETRIC, reason="no consistent set of strategies exists")

        outcome = solve(system)
        if not isinstance(outcome, Feasible):
            # the incremental checks already proved feasibility
            raise RuntimeError("complete candidate became infeasible")
        return Decision(QUASI_ISOMETRIC, strategy_set=ss.copy(), system=system, assignment=outcome.assignment)


def search(
    left: PsetAnalysis,
    right: PsetAnalysis,
    oracle: Optional[EquivalenceOracle] = None,
    limits: Optional[SearchLimits] = None,
    convention: str = EXAMPLE,
) -> Decision:
    """Decide whether two analysed tubular groups are quasi-isometric."""
    return CandidateSearch(left, right, oracle, limits, convention).run()
