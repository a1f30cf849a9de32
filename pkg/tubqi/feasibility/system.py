"""Difference-constraint systems for candidate strategy sets."""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional

from ..model.logvalue import ZERO, LogValue
from ..psets.classes import Match

if TYPE_CHECKING:
    from ..strategies.strategy import Strategy, StrategySet

logger = logging.getLogger(__name__)

EXAMPLE = "example"
PROSE = "prose"
CONVENTIONS = (EXAMPLE, PROSE)

ORIGIN = Match(0, 0)


@dataclass(frozen=True, order=True)
class Var:
    """Lower bound L, middle M or upper bound U of a match; Z is the origin."""

    kind: str
    match: Match = ORIGIN

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        return f"{self.kind}{self.match}"


Z = Var("Z")


@dataclass(frozen=True)
class Provenance:
    """Where a constraint came from."""

    source: str
    match: Optional[Match] = None
    terminal: Optional[int] = None
    rule: str = ""


@dataclass(frozen=True)
class Constraint:
    """x - y <= c."""

    x: Var
    y: Var
    c: LogValue
    provenance: Provenance = field(default_factory=lambda: Provenance("manual"), compare=False)

    def holds(self, values: Dict[Var, LogValue]) -> bool:
        return values[self.x] - values[self.y] <= self.c

    def __str__(self) -> str:
        return f"{self.x} - {self.y} <= {self.c}"


class ConstraintSystem:
    """An ordered set of variables and difference constraints over LogValues."""

    def __init__(self, constraints: Iterable[Constraint] = ()):
        self.vars: List[Var] = []
        self._known = set()
        self.constraints: List[Constraint] = []
        for constraint in constraints:
            self.append(constraint)

    def var(self, v: Var) -> Var:
        if v not in self._known:
            self._known.add(v)
            self.vars.append(v)
        return v

    def append(self, constraint: Constraint) -> None:
        self.var(constraint.x)
        self.var(constraint.y)
        self.constraints.append(constraint)

    def add(self, x: Var, y: Var, c: LogValue, provenance: Optional[Provenance] = None) -> Constraint:
        constraint = Constraint(x, y, c, provenance or Provenance("manual"))
        self.append(constraint)
        return constraint

    def fix(self, v: Var, value: LogValue) -> None:
        """Pin v to value relative to the origin variable Z."""
        pin = Provenance("fixed", v.match, rule=f"{v} = {value}")
        self.add(v, Z, value, pin)
        self.add(Z, v, -value, pin)

    def copy(self) -> "ConstraintSystem":
        return ConstraintSystem(self.constraints)

    def matches(self) -> List[Match]:
        """Matches carrying a middle variable, in canonical order."""
        return sorted(v.match for v in self.vars if v.kind == "M")

    def __len__(self) -> int:
        return len(self.constraints)


def _terminal_rules(rules, role, m, index, label, error) -> List[Constraint]:
    def rule(x, y, c, text):
        return Constraint(x, y, c, Provenance(role, m, index, text))

    if rules == "positive":
        return [
            rule(Var("L", label), Var("L", m), error, "L_i + E >= L_j"),
            rule(Var("M", m), Var("U", label), -error, "M_i + E <= U_j"),
        ]
    return [
        rule(Var("U", m), Var("U", label), -error, "U_i + E <= U_j"),
        rule(Var("L", label), Var("M", m), error, "M_i + E >= L_j"),
    ]


def bounds_constraints(m: Match) -> List[Constraint]:
    """L_m <= M_m <= U_m for a bounded match."""
    return [
        Constraint(Var("L", m), Var("M", m), ZERO, Provenance("bounds", m, rule="L_i <= M_i")),
        Constraint(Var("M", m), Var("U", m), ZERO, Provenance("bounds", m, rule="M_i <= U_i")),
    ]


def strategy_constraints(
    m: Match, role: str, strategy: "Strategy", convention: str = EXAMPLE
) -> List[Constraint]:
    """
    Constraints one strategy contributes in one role.

    Args:
        m: The match the strategy is rooted at.
        role: "positive" or "negative".
        strategy: The strategy.
        convention: "example" or "prose"; "prose" exchanges the rules of
            the two roles but keeps the role in the provenance.

    Returns:
        Two constraints per defined terminal, in terminal order.
    """
    rules = role
    if convention == PROSE:
        rules = "negative" if role == "positive" else "positive"
    constraints: List[Constraint] = []
    for index, terminal in enumerate(strategy.terminals):
        if terminal.error is not None:
            constraints.extend(_terminal_rules(rules, role, m, index, terminal.label, terminal.error))
    return constraints


def build_system(ss: "StrategySet", convention: str = EXAMPLE) -> ConstraintSystem:
    """
    Build the consistency system of a (possibly partial) strategy set.

    For each bounded match i: L_i <= M_i <= U_i. For each defined terminal
    (label j, error E) of the positive strategy of i: L_i + E >= L_j and
    M_i + E <= U_j; of the negative strategy: U_i + E <= U_j and
    M_i + E >= L_j. The "prose" convention exchanges the two roles.

    Args:
        ss: Chosen strategies.
        convention: "example" or "prose".

    Returns:
        The system, with provenance on every constraint.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    system = ConstraintSystem()
    for m in ss.matches:
        if ss.bounded[m]:
            for constraint in bounds_constraints(m):
                system.append(constraint)

    for m in ss.matches:
        for role, strategy in (("positive", ss.positive[m]), ("negative", ss.negative[m])):
            for constraint in strategy_constraints(m, role, strategy, convention):
                system.append(constraint)

    logger.debug(f"System has {len(system.vars)} variables and {len(system)} constraints")
    return system
