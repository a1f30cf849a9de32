"""Consistency systems and their exact solution."""

from .system import (
    CONVENTIONS,
    EXAMPLE,
    PROSE,
    Constraint,
    ConstraintSystem,
    Provenance,
    Var,
    Z,
    bounds_constraints,
    build_system,
    strategy_constraints,
)
from .solver import Assignment, Feasible, FeasibilityTracker, Infeasible, check, is_feasible, solve

__all__ = [
    "CONVENTIONS",
    "EXAMPLE",
    "PROSE",
    "Constraint",
    "ConstraintSystem",
    "Provenance",
    "Var",
    "Z",
    "bounds_constraints",
    "build_system",
    "strategy_constraints",
    "Assignment",
    "Feasible",
    "FeasibilityTracker",
    "Infeasible",
    "check",
    "is_feasible",
    "solve",
]
