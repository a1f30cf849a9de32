"""Tests for the maximum slope of the tree of P-sets."""

import random
from fractions import Fraction
from pathlib import Path

import networkx as nx
import pytest
from tubqi.model import LogValue, change_basis, parse_graph, total
from tubqi.psets import SlopeRatio, analyze, max_slope, step_graph
from tubqi.strategies import search

SAMPLES = Path(__file__).parent.parent / "samples"

SLOPES = [(1, 0), (0, 1), (1, 1), (1, -1)]
BASIS = ((2, 1), (1, 1))
SWAPPED_W2 = "vertex v\nedge x : v (1,0) -> v (2,2)\nedge y : v (0,1) -> v (4,4)\n"
UNIT_TORUS = "vertex v\nedge x : v (1,0) -> v (2,2)\nedge y : v (0,1) -> v (2,2)\n"


def load(name):
    return parse_graph((SAMPLES / name).read_text())


def cycle_oracle(analysis):
    """Best mean gain over the simple cycles of the step graph."""
    transitions = step_graph(analysis)
    best = None
    for cycle in nx.simple_cycles(transitions):
        gains = [
            transitions[u][v]["gain"] for u, v in zip(cycle, cycle[1:] + cycle[:1])
        ]
        ratio = SlopeRatio(total(gains), len(cycle))
        if best is None or best < ratio:
            best = ratio
    return best


def random_presentation(rng):
    """One vertex with three or four lines, split into chains of links."""
    lines = rng.sample(SLOPES, rng.choice([3, 4]))
    cut = rng.randint(1, len(lines))
    chains = [lines[:cut], lines[cut:]]
    edges = []
    for chain in chains:
        if len(chain) == 1:
            a, b = chain[0]
            edges.append(((a, b), (a, b)))
        for (a, b), (c, d) in zip(chain, chain[1:]):
            k, l = rng.randint(1, 3), rng.randint(1, 3)
            edges.append(((k * a, k * b), (l * c, l * d)))
    text = ["vertex v"]
    for n, ((a, b), (c, d)) in enumerate(edges):
        text.append(f"edge e{n} : v ({a},{b}) -> v ({c},{d})")
    return parse_graph("\n".join(text))


class TestSlopeRatio:
    """Test cases for SlopeRatio."""

    def test_cross_multiplied_order(self):
        """Test that ratios compare exactly."""
        one = SlopeRatio(LogValue.from_height(1), 1)
        assert one == SlopeRatio(LogValue.from_height(2), 2)
        assert SlopeRatio(LogValue.from_height(1), 3) < one
        assert one.value() == 1
        assert SlopeRatio(LogValue(Fraction(3)), 2).value() is None

    def test_steps_positive(self):
        """Test that zero steps are refused."""
        with pytest.raises(ValueError):
            SlopeRatio(LogValue.from_height(1), 0)


class TestMaxSlope:
    """Test cases for max_slope."""

    def test_w2(self):
        """Test the one-torus group with height changes 2 and 1."""
        result = max_slope(analyze(load("w2.tub")))
        assert result.value() == 2
        assert result.render() == "2"

    def test_wise(self):
        """Test Wise's group."""
        assert max_slope(analyze(load("wise.tub"))).value() == 1

    def test_flat(self):
        """Test that heights of zero give slope zero."""
        assert max_slope(analyze(load("flat.tub"))).value() == 0

    def test_undefined(self):
        """Test that two-line vertices and unbounded classes give no slope."""
        assert max_slope(analyze(load("u.tub"))) is None
        assert max_slope(analyze(load("raag_path.tub"))) is None

    def test_matches_cycle_oracle(self):
        """Test Karp's recurrence against brute force over simple cycles."""
        rng = random.Random(11)
        for _ in range(40):
            analysis = analyze(random_presentation(rng))
            assert max_slope(analysis) == cycle_oracle(analysis)

    def test_step_graph_states(self):
        """Test one state per line family and no transition along the arriving line."""
        analysis = analyze(load("w2.tub"))
        transitions = step_graph(analysis)
        assert set(transitions.nodes) == set(analysis.type_refs)
        best = max(data["gain"] for _, _, data in transitions.edges(data=True))
        assert best == LogValue.from_height(2)


class TestMaxSlopeInvariance:
    """The maximal slope depends only on the group up to quasi-isometry."""

    @pytest.mark.parametrize(
        "name, vertex", [("w2.tub", "v"), ("wise.tub", "v"), ("triple.tub", "a"), ("flat.tub", "v")]
    )
    def test_basis_change(self, name, vertex):
        """Test that re-basing one vertex keeps the slope."""
        original = max_slope(analyze(load(name)))
        moved = max_slope(analyze(change_basis(load(name), vertex, BASIS)))
        assert moved == original

    @pytest.mark.parametrize(
        "first, second, expected",
        [
            (load("w2.tub"), parse_graph(SWAPPED_W2), 2),
            (load("wise.tub"), parse_graph(UNIT_TORUS), 1),
            (load("raag_path.tub"), load("raag_double.tub"), None),
        ],
    )
    def test_equal_for_quasi_isometric_pairs(self, first, second, expected):
        """Test that both sides of a quasi-isometric pair report the same slope."""
        a, b = analyze(first), analyze(second)
        assert search(a, b).quasi_isometric
        slopes = [max_slope(a), max_slope(b)]
        if expected is None:
            assert slopes == [None, None]
        else:
            assert [s.value() for s in slopes] == [expected, expected]
