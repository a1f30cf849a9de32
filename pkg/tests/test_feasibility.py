"""Tests for consistency systems and the exact solver."""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest
from tubqi.feasibility import (
    PROSE,
    Assignment,
    Constraint,
    ConstraintSystem,
    Feasible,
    FeasibilityTracker,
    Infeasible,
    Var,
    bounds_constraints,
    build_system,
    check,
    is_feasible,
    solve,
    strategy_constraints,
)
from tubqi.feasibility.solver import M_ZERO, MARGIN, NORMALIZED
from tubqi.model import ZERO, LogValue, parse_graph
from tubqi.psets import analyze
from tubqi.strategies import (
    EquivalenceOracle,
    Match,
    StrategySet,
    build_strategy,
    irreducible_extensions,
)

SAMPLES = Path(__file__).parent.parent / "samples"

A, B = Match(1, 1), Match(2, 2)


def h(value):
    return LogValue.from_height(value)


def worked_system(lam, mu):
    """The two-match system of the non-commensurable example, as x - y <= c."""
    L1, M1, U1 = Var("L", A), Var("M", A), Var("U", A)
    L2, M2, U2 = Var("L", B), Var("M", B), Var("U", B)
    system = ConstraintSystem()
    for lower, middle, upper in ((L1, M1, U1), (L2, M2, U2)):
        system.add(lower, middle, ZERO)
        system.add(middle, upper, ZERO)
    system.add(U1, U2, ZERO)  # U1 + 0 <= U2
    system.add(L2, M1, ZERO)  # M1 + 0 >= L2
    system.add(M1, U2, ZERO)  # M1 + 0 <= U2
    system.add(L2, L1, ZERO)  # L1 + 0 >= L2
    system.add(M2, U1, h(-2 * mu))  # M2 + 2mu <= U1
    system.add(L1, L2, h(2 * mu))  # L2 + 2mu >= L1
    system.add(U2, U1, ZERO)  # U2 - 0 <= U1
    system.add(L1, M2, ZERO)  # M2 - 0 >= L1
    system.add(U2, U1, h(2 * (lam - mu)))  # U2 - 2(lam - mu) <= U1
    system.add(L1, M2, h(-2 * (lam - mu)))  # M2 - 2(lam - mu) >= L1
    return system


def brute_force_feasible(system):
    """Try every half-step point a shortest-path solution can land on."""
    n = len(system.vars)
    index = {v: k for k, v in enumerate(system.vars)}
    rows = [(index[c.x], index[c.y], int(2 * c.c.height())) for c in system.constraints]
    # distances from the virtual source lie in [-(n - 1), 0] when every constant is >= -1
    for point in itertools.product(range(-2 * (n - 1), 1), repeat=n):
        if all(point[x] - point[y] <= c for x, y, c in rows):
            return True
    return False


class TestSolver:
    """Test cases for solve and check."""

    def test_worked_example(self):
        """Test the example system with lambda = 2, mu = 1."""
        system = worked_system(2, 1)
        assert len(system.vars) == 6
        outcome = solve(system)
        assert isinstance(outcome, Feasible)
        assert check(system, outcome.assignment) == []

        values = {}
        for m in (A, B):
            values[Var("U", m)] = h(4)
            values[Var("M", m)] = ZERO
            values[Var("L", m)] = h(-4)
        assert check(system, Assignment(values)) == []

    def test_worked_example_normalized(self):
        """Test that the solution has every M at zero and margins around it."""
        outcome = solve(worked_system(2, 1))
        values = outcome.assignment.values
        assert outcome.assignment.normalization == NORMALIZED
        for m in (A, B):
            assert values[Var("M", m)] == ZERO
            assert values[Var("U", m)] >= MARGIN
            assert values[Var("L", m)] <= -MARGIN

    def test_corrupted_bound(self):
        """Test that pinning U1 to 1 with both M at 0 is infeasible."""
        system = worked_system(2, 1)
        system.fix(Var("M", A), ZERO)
        system.fix(Var("M", B), ZERO)
        system.fix(Var("U", A), h(1))
        outcome = solve(system)
        assert isinstance(outcome, Infeasible)
        assert outcome.total < ZERO
        assert sum((c.c for c in outcome.cycle), start=ZERO) == outcome.total
        for before, after in zip(outcome.cycle, outcome.cycle[1:] + outcome.cycle[:1]):
            assert after.y == before.x

    def test_empty_system(self):
        """Test that no constraints are trivially feasible."""
        outcome = solve(ConstraintSystem())
        assert isinstance(outcome, Feasible)
        assert outcome.assignment.values == {}

    def test_self_loop(self):
        """Test that x - x <= -1 is its own negative cycle."""
        x = Var("L", A)
        system = ConstraintSystem([Constraint(x, x, h(-1))])
        outcome = solve(system)
        assert isinstance(outcome, Infeasible)
        assert len(outcome.cycle) == 1
        assert outcome.total == h(-1)

    def test_all_zero_errors(self):
        """Test that zero errors are satisfied by all variables at zero."""
        strategies = w2_strategies()
        zero = [s for s in strategies if all(t.error == ZERO for t in s.terminals)]
        ss = StrategySet()
        ss.assign(A, zero[0], zero[0], True)
        system = build_system(ss)
        assert check(system, Assignment({v: ZERO for v in system.vars})) == []
        assert solve(system).assignment[Var("M", A)] == ZERO

    def test_margin_dropped_when_forced(self):
        """Test that an upper bound forced to zero keeps M at zero without a margin."""
        system = ConstraintSystem()
        L, M, U = Var("L", A), Var("M", A), Var("U", A)
        system.add(L, M, ZERO)
        system.add(M, U, ZERO)
        system.add(U, M, ZERO)
        outcome = solve(system)
        assert outcome.assignment.normalization == M_ZERO
        assert outcome.assignment[U] == ZERO

    def test_check_reports_violations(self):
        """Test that check lists violated and unassigned constraints."""
        x, y = Var("L", A), Var("U", A)
        system = ConstraintSystem([Constraint(x, y, ZERO)])
        assert len(check(system, Assignment({x: h(1), y: ZERO}))) == 1
        assert len(check(system, Assignment({x: ZERO}))) == 1

    def test_matches_brute_force(self):
        """Test the solver against a grid search on random small systems."""
        rng = random.Random(2024)
        constants = [LogValue(Fraction(q)) for q in ("1/4", "1/2", "1", "2", "4")]
        variables = [Var(k, Match(n, n)) for n in (1, 2) for k in ("L", "U")]
        for _ in range(500):
            n = rng.randint(1, 4)
            chosen = variables[:n]
            system = ConstraintSystem()
            for _ in range(rng.randint(1, 6)):
                system.add(rng.choice(chosen), rng.choice(chosen), rng.choice(constants))
            outcome = solve(system)
            assert outcome.feasible == brute_force_feasible(system)
            assert outcome.feasible == is_feasible(system)
            if outcome.feasible:
                assert check(system, outcome.assignment) == []


class TestFeasibilityTracker:
    """Test cases for FeasibilityTracker."""

    def test_push_and_pop(self):
        """Test that an infeasible frame is refused and earlier frames survive."""
        x, y = Var("L", A), Var("U", A)
        tracker = FeasibilityTracker()
        assert tracker.push([Constraint(x, y, h(-1))])
        assert not tracker.push([Constraint(y, x, h(Fraction(1, 2)))])
        assert len(tracker) == 1
        assert tracker.potential[x] - tracker.potential[y] <= h(-1)
        assert tracker.push([Constraint(y, x, h(1))])
        tracker.pop()
        tracker.pop()
        assert len(tracker) == 0
        assert tracker.potential == {}

    def test_negative_self_loop(self):
        """Test that a lone negative self-loop is refused."""
        x = Var("L", A)
        tracker = FeasibilityTracker()
        assert not tracker.push([Constraint(x, x, h(Fraction(-1, 2)))])
        assert tracker.potential == {}

    def test_pop_restores_potentials(self):
        """Test that popping a frame restores the potentials it lowered."""
        x, y, z = Var("L", A), Var("M", A), Var("U", A)
        tracker = FeasibilityTracker()
        tracker.push([Constraint(x, y, ZERO), Constraint(y, z, ZERO)])
        before = dict(tracker.potential)
        assert tracker.push([Constraint(x, z, h(-2)), Constraint(x, y, h(-1))])
        assert tracker.potential != before
        tracker.pop()
        assert tracker.potential == before

    def test_matches_batch_solver(self):
        """Test incremental answers against Bellman-Ford on random push/pop sequences."""
        rng = random.Random(7)
        constants = [LogValue(Fraction(q)) for q in ("1/4", "1/2", "1", "2", "4")]
        variables = [Var(k, Match(n, n)) for n in (1, 2) for k in ("L", "M", "U")]
        for _ in range(300):
            tracker = FeasibilityTracker()
            frames = []
            for _ in range(rng.randint(1, 8)):
                if frames and rng.random() < 0.3:
                    tracker.pop()
                    frames.pop()
                    continue
                frame = [
                    Constraint(rng.choice(variables), rng.choice(variables), rng.choice(constants))
                    for _ in range(rng.randint(1, 3))
                ]
                combined = ConstraintSystem([c for f in frames for c in f] + frame)
                accepted = tracker.push(frame)
                assert accepted == is_feasible(combined)
                if accepted:
                    frames.append(frame)
                    assert check(combined, Assignment(dict(tracker.potential))) == []


def w2_strategies():
    a = analyze(parse_graph((SAMPLES / "w2.tub").read_text()))
    oracle = EquivalenceOracle(a, a)
    return [build_strategy(a, a, e) for e in irreducible_extensions(oracle, A)]


class TestBuildSystem:
    """Test cases for build_system."""

    def test_quick_rejection(self):
        """Test that a positive strategy with a negative self-loop error is inconsistent."""
        strategies = w2_strategies()
        bad = next(
            s for s in strategies if any(t.label == A and t.error < ZERO for t in s.terminals)
        )
        ss = StrategySet()
        ss.assign(A, bad, strategies[0], True)
        system = build_system(ss)
        offending = [
            c
            for c in system.constraints
            if c.x == c.y == Var("L", A) and c.c < ZERO
        ]
        assert offending
        assert all(c.provenance.rule == "L_i + E >= L_j" for c in offending)
        assert all(c.provenance.source == "positive" for c in offending)
        assert isinstance(solve(system), Infeasible)

    def test_bounds_and_terminal_counts(self):
        """Test two bound constraints per match and two per defined terminal."""
        strategies = w2_strategies()
        ss = StrategySet()
        ss.assign(A, strategies[0], strategies[-1], True)
        system = build_system(ss)
        defined = sum(
            1 for s in (strategies[0], strategies[-1]) for t in s.terminals if t.error is not None
        )
        assert len(system) == 2 + 2 * defined
        assert system.matches() == [A]

    def test_unbounded_match_has_no_variables(self):
        """Test that unbounded matches contribute nothing."""
        strategies = w2_strategies()
        ss = StrategySet()
        ss.assign(A, strategies[0], strategies[0], False)
        system = build_system(ss)
        assert all(c.provenance.source != "bounds" for c in system.constraints)

    def test_prose_convention_swaps_rules(self):
        """Test that the prose convention applies the other rule pair but keeps the role."""
        strategies = w2_strategies()
        ss = StrategySet()
        ss.assign(A, strategies[0], strategies[0], True)
        example = build_system(ss)
        prose = build_system(ss, PROSE)
        assert len(example) == len(prose)
        positive = [c for c in prose.constraints if c.provenance.source == "positive"]
        assert {c.provenance.rule for c in positive} == {"U_i + E <= U_j", "M_i + E >= L_j"}

    def test_unknown_convention(self):
        """Test that unknown conventions are refused."""
        with pytest.raises(ValueError):
            build_system(StrategySet(), "other")

    def test_built_from_per_strategy_parts(self):
        """Test that the system is the bounds followed by each strategy's constraints."""
        strategies = w2_strategies()
        ss = StrategySet()
        ss.assign(A, strategies[0], strategies[-1], True)
        parts = (
            bounds_constraints(A)
            + strategy_constraints(A, "positive", strategies[0])
            + strategy_constraints(A, "negative", strategies[-1])
        )
        assert build_system(ss).constraints == parts
