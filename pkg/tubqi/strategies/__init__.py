"""Matches, extensions, strategies and the candidate search."""

from .extensions import (
    EquivalenceOracle,
    Extension,
    Match,
    TypeBijection,
    entry_bijections,
    enumerate_extensions,
    irreducible_extensions,
    minimal_supports,
)
from .strategy import (
    LabelSummary,
    Strategy,
    StrategySet,
    Terminal,
    build_strategy,
    prune_dominated,
    summarize,
)
from .search import (
    INCONCLUSIVE,
    NOT_QUASI_ISOMETRIC,
    QUASI_ISOMETRIC,
    CandidateSearch,
    Decision,
    SearchLimits,
    SearchStatistics,
    search,
)

__all__ = [
    "EquivalenceOracle",
    "Extension",
    "Match",
    "TypeBijection",
    "entry_bijections",
    "enumerate_extensions",
    "irreducible_extensions",
    "minimal_supports",
    "LabelSummary",
    "Strategy",
    "StrategySet",
    "Terminal",
    "build_strategy",
    "prune_dominated",
    "summarize",
    "INCONCLUSIVE",
    "NOT_QUASI_ISOMETRIC",
    "QUASI_ISOMETRIC",
    "CandidateSearch",
    "Decision",
    "SearchLimits",
    "SearchStatistics",
    "search",
]
