"""Independent re-verification of a claimed consistent set of strategies."""

import logging
from typing import Optional

from ..feasibility.solver import Assignment, check
from ..feasibility.system import ConstraintSystem, build_system
from ..psets.classes import PsetAnalysis
from ..strategies.extensions import EquivalenceOracle
from ..strategies.strategy import StrategySet, build_strategy
from ..utils.exceptions import CertificateError

logger = logging.getLogger(__name__)


def verify(
    ss: StrategySet,
    left: PsetAnalysis,
    right: PsetAnalysis,
    system: ConstraintSystem,
    assignment: Assignment,
    convention: str,
    oracle: Optional[EquivalenceOracle] = None,
) -> None:
    """
    Re-check every claim a quasi-isometry certificate makes.

    Checks closure, covering, matching height kinds, the row/column rule,
    that each entry is among the induced bijections, that terminals are
    recomputable, that the system is the one the strategies generate, and
    that the assignment satisfies it.

    Raises:
        CertificateError: With the reason and the path of the first failure.
    """
    oracle = oracle or EquivalenceOracle(left, right)

    if not ss.matches:
        raise CertificateError("no matches")
    if not ss.closed():
        missing = sorted(ss.required() - set(ss.positive))
        raise CertificateError(f"not closed: {', '.join(map(str, missing))} required but absent")
    if not ss.covering(len(left.classes), len(right.classes)):
        raise CertificateError("matches do not cover every class of both groups")

    for m in ss.matches:
        if left.cls(m.left).bounded != right.cls(m.right).bounded:
            raise CertificateError(f"{m} pairs classes of different height kinds", [str(m)])
        if ss.bounded[m] != left.cls(m.left).bounded:
            raise CertificateError(f"{m} has the wrong height kind recorded", [str(m)])

        for role, strategy in (("positive", ss.positive[m]), ("negative", ss.negative[m])):
            path = [str(m), role]
            extension = strategy.extension
            if strategy.root != m or extension.match != m:
                raise CertificateError("strategy is rooted at another match", path)
            if len(extension.matrix) != left.cls(m.left).size or any(
                len(row) != right.cls(m.right).size for row in extension.matrix
            ):
                raise CertificateError("extension has the wrong shape", path)
            if not extension.covers():
                raise CertificateError("extension leaves a row or column empty", path)
            for i, j, bijection in extension.entries():
                if bijection not in oracle.entry_bijections(m, i, j):
                    raise CertificateError(
                        "entry is not an induced bijection", path + [f"entry ({i},{j})"]
                    )
            if build_strategy(left, right, extension).terminals != strategy.terminals:
                raise CertificateError("terminals do not match recomputation", path)

    expected = [(c.x, c.y, c.c) for c in build_system(ss, convention).constraints]
    if expected != [(c.x, c.y, c.c) for c in system.constraints]:
        raise CertificateError("constraint system does not match the strategies")

    violated = check(system, assignment)
    if violated:
        raise CertificateError(f"assignment violates {violated[0]}", [str(violated[0])])

    logger.debug(f"Certificate with {len(ss.matches)} matches verified")
