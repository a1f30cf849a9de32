"""Exact Bellman-Ford feasibility for difference constraints over LogValues."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Iterable, List, Optional, Tuple, Union

from .system import Constraint, ConstraintSystem, Provenance, Var, Z
from ..model.logvalue import ZERO, LogValue, total

logger = logging.getLogger(__name__)

# margin of the normalized solution: U_i >= 1/2, L_i <= -1/2
MARGIN = LogValue(2)

NORMALIZED = "m-zero-margin"
M_ZERO = "m-zero"
RAW = "raw"


@dataclass(frozen=True)
class Assignment:
    """A value for every variable of a system, relative to the origin."""

    values: Dict[Var, LogValue]
    normalization: str = RAW

    def __getitem__(self, v: Var) -> LogValue:
        return self.values[v]

    def with_origin(self) -> Dict[Var, LogValue]:
        values = dict(self.values)
        values.setdefault(Z, ZERO)
        return values


@dataclass(frozen=True)
class Feasible:
    assignment: Assignment

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    """A cycle of constraints whose constants sum to a negative total."""

    cycle: Tuple[Constraint, ...]
    total: LogValue

    @property
    def feasible(self) -> bool:
        return False


Outcome = Union[Feasible, Infeasible]


def _shortest_paths(system: ConstraintSystem) -> Tuple[Dict[Var, LogValue], Optional[Tuple[Constraint, ...]]]:
    """Distances from a virtual source joined to every variable at weight zero."""
    dist = {v: ZERO for v in system.vars}
    pred: Dict[Var, Constraint] = {}
    last: Optional[Var] = None
    rounds = len(system.vars) + 1
    for _ in range(rounds):
        last = None
        for constraint in system.constraints:
            # x - y <= c is the edge y -> x of weight c
            candidate = dist[constraint.y] + constraint.c
            if candidate < dist[constraint.x]:
                dist[constraint.x] = candidate
                pred[constraint.x] = constraint
                last = constraint.x
        if last is None:
            return dist, None

    v = last
    for _ in range(rounds):
        v = pred[v].y
    cycle: List[Constraint] = []
    u = v
    while True:
        edge = pred[u]
        cycle.append(edge)
        u = edge.y
        if u == v:
            break
    cycle.reverse()
    return dist, tuple(cycle)


def _feasible_values(system: ConstraintSystem) -> Optional[Dict[Var, LogValue]]:
    dist, cycle = _shortest_paths(system)
    if cycle is not None:
        return None
    origin = dist.get(Z, ZERO)
    return {v: dist[v] - origin for v in system.vars if v != Z}


def _normalized(system: ConstraintSystem, margin: bool) -> ConstraintSystem:
    extended = system.copy()
    for m in system.matches():
        extended.fix(Var("M", m), ZERO)
        if margin:
            rule = Provenance("normalization", m, rule="U_i >= margin, L_i <= -margin")
            extended.add(Z, Var("U", m), -MARGIN, rule)
            extended.add(Var("L", m), Z, -MARGIN, rule)
    return extended


def solve(system: ConstraintSystem) -> Outcome:
    """
    Decide a difference-constraint system exactly.

    A feasible system is re-solved with M_i = 0, U_i > 0 and L_i < 0 for
    every match; if that fails, with M_i = 0 only; if that fails too the
    raw shortest-path solution is returned and the failure is logged.

    Args:
        system: The constraints.

    Returns:
        Feasible with an assignment satisfying every constraint, or
        Infeasible with a negative cycle.
    """
    dist, cycle = _shortest_paths(system)
    if cycle is not None:
        cycle_total = total(c.c for c in cycle)
        logger.debug(f"Infeasible: negative cycle of length {len(cycle)}, total {cycle_total}")
        return Infeasible(cycle, cycle_total)

    for margin, label in ((True, NORMALIZED), (False, M_ZERO)):
        values = _feasible_values(_normalized(system, margin))
        if values is not None:
            values = {v: values[v] for v in system.vars if v != Z}
            return Feasible(Assignment(values, label))

    logger.warning("Feasible system admits no solution with M_i = 0; keeping the raw solution")
    origin = dist.get(Z, ZERO)
    return Feasible(Assignment({v: dist[v] - origin for v in system.vars if v != Z}, RAW))


def check(system: ConstraintSystem, assignment: Assignment) -> List[Constraint]:
    """Constraints the assignment violates; missing variables count as violations."""
    values = assignment.with_origin()
    return [
        c
        for c in system.constraints
        if c.x not in values or c.y not in values or not c.holds(values)
    ]


def is_feasible(system: ConstraintSystem) -> bool:
    """Negative-cycle test only, without building an assignment."""
    _, cycle = _shortest_paths(system)
    return cycle is None


class FeasibilityTracker:
    """
    Incremental negative-cycle detection for a system that grows and shrinks.

    Keeps potentials that satisfy every constraint pushed so far. Pushing a
    frame relaxes from the new constraints only, starting from the current
    potentials; popping restores them. Used by the search, where each
    partial candidate extends the previous one by a few constraints.
    """

    def __init__(self):
        self.potential: Dict[Var, LogValue] = {}
        self._out: Dict[Var, List[Constraint]] = {}
        self._frames: List[Tuple[List[Constraint], Dict[Var, LogValue], List[Var]]] = []

    def __len__(self) -> int:
        return len(self._frames)

    def push(self, constraints: Iterable[Constraint]) -> bool:
        """
        Add constraints as a new frame if the system stays feasible.

        Returns:
            True and keeps the frame if feasible; False and leaves the
            tracker unchanged otherwise.
        """
        added: List[Constraint] = []
        saved: Dict[Var, LogValue] = {}
        created: List[Var] = []
        self._frames.append((added, saved, created))

        queue: Deque[Var] = deque()
        queued = set()
        for constraint in constraints:
            for v in (constraint.x, constraint.y):
                if v not in self.potential:
                    self.potential[v] = ZERO
                    self._out[v] = []
                    created.append(v)
            self._out[constraint.y].append(constraint)
            added.append(constraint)
            if constraint.y not in queued:
                queue.append(constraint.y)
                queued.add(constraint.y)

        # a relaxation path with as many edges as there are variables repeats one,
        # and only a negative cycle can be relaxed around
        hops: Dict[Var, int] = {}
        while queue:
            u = queue.popleft()
            queued.discard(u)
            for edge in self._out[u]:
                candidate = self.potential[u] + edge.c
                if candidate < self.potential[edge.x]:
                    saved.setdefault(edge.x, self.potential[edge.x])
                    self.potential[edge.x] = candidate
                    hops[edge.x] = hops.get(u, 0) + 1
                    if hops[edge.x] >= len(self.potential):
                        self.pop()
                        return False
                    if edge.x not in queued:
                        queue.append(edge.x)
                        queued.add(edge.x)
        return True

    def pop(self) -> None:
        """Undo the most recent frame."""
        added, saved, created = self._frames.pop()
        for constraint in reversed(added):
            self._out[constraint.y].pop()
        for v, value in saved.items():
            self.potential[v] = value
        for v in created:
            del self.potential[v]
            del self._out[v]
