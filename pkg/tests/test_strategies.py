"""Tests for entry bijections, extensions and strategies."""

import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from tubqi.cache import MemoryCache
from tubqi.model import ZERO, parse_graph
from tubqi.pattern import Moebius
from tubqi.psets import TypeRef, analyze
from tubqi.strategies import (
    EquivalenceOracle,
    Extension,
    Match,
    build_strategy,
    entry_bijections,
    enumerate_extensions,
    irreducible_extensions,
    minimal_supports,
    prune_dominated,
)

SAMPLES = Path(__file__).parent.parent / "samples"
ROOT = Match(1, 1)


def analysis_of(name, overrides=None):
    return analyze(parse_graph((SAMPLES / name).read_text()), overrides)


@pytest.fixture
def w2_oracle():
    a = analysis_of("w2.tub")
    return EquivalenceOracle(a, a)


def identity_extension(oracle, m):
    for extension in irreducible_extensions(oracle, m):
        if all(
            b.witness == Moebius.identity() and i == j for i, j, b in extension.entries()
        ) and len(extension.support()) == len(extension.matrix):
            return extension
    raise AssertionError("no identity extension")


class TestEntryBijections:
    """Test cases for entry_bijections."""

    def test_identity_present(self, w2_oracle):
        """Test that pinning a type to itself allows the identity."""
        bijections = entry_bijections(w2_oracle, ROOT, 3, 3)
        identity = tuple((TypeRef(1, k), TypeRef(1, k)) for k in (1, 2, 3))
        assert any(b.pairs == identity for b in bijections)
        assert all((TypeRef(1, 3), TypeRef(1, 3)) in b.pairs for b in bijections)

    def test_swap_zero_and_infinity(self, w2_oracle):
        """Test that the type of slope 0 can be sent to the type of slope infinity."""
        bijections = entry_bijections(w2_oracle, ROOT, 2, 1)
        assert len(bijections) == 2
        assert all(b.root == (TypeRef(1, 2), TypeRef(1, 1)) for b in bijections)

    def test_line_count_mismatch(self):
        """Test that a 3-line type never pairs with a 2-line type."""
        oracle = EquivalenceOracle(analysis_of("w2.tub"), analysis_of("raag_path.tub"))
        assert entry_bijections(oracle, ROOT, 1, 1) == []

    def test_cached_equivalences(self):
        """Test that a shared cache serves repeated pattern pairs."""
        cache = MemoryCache()
        a = analysis_of("w2.tub")
        oracle = EquivalenceOracle(a, a, cache)
        for i, j in itertools.product((1, 2, 3), repeat=2):
            entry_bijections(oracle, ROOT, i, j)
        stats = cache.get_stats()
        assert stats["misses"] == 1
        assert stats["hits"] == 8


class TestExtensions:
    """Test cases for enumerate_extensions and irreducible_extensions."""

    def test_single_cell_one_bijection(self):
        """Test a 1x1 match with exactly one bijection."""
        u = analysis_of("u.tub")
        extensions = list(enumerate_extensions(EquivalenceOracle(u, u), ROOT))
        assert len(extensions) == 1

    def test_single_cell_no_bijection(self):
        """Test a 1x1 match between patterns of different sizes."""
        oracle = EquivalenceOracle(analysis_of("flat.tub"), analysis_of("u.tub"))
        assert list(enumerate_extensions(oracle, ROOT)) == []

    def test_matches_brute_force(self, w2_oracle):
        """Test lazy enumeration against filtering every matrix."""
        options = [
            [[None] + entry_bijections(w2_oracle, ROOT, i, j) for j in (1, 2, 3)]
            for i in (1, 2, 3)
        ]
        brute = set()
        for cells in itertools.product(*(options[i][j] for i in range(3) for j in range(3))):
            matrix = tuple(tuple(cells[3 * i : 3 * i + 3]) for i in range(3))
            extension = Extension(ROOT, matrix)
            if extension.covers():
                brute.add(extension)
        lazy = list(enumerate_extensions(w2_oracle, ROOT))
        assert len(lazy) == len(brute)
        assert set(lazy) == brute

    def test_irreducible_extensions_cover(self, w2_oracle):
        """Test every irreducible extension covers and every extension contains one."""
        irreducible = list(irreducible_extensions(w2_oracle, ROOT))
        assert irreducible
        assert all(e.covers() for e in irreducible)
        supports = {frozenset(e.support()) for e in irreducible}
        for extension in itertools.islice(enumerate_extensions(w2_oracle, ROOT), 500):
            cells = frozenset(extension.support())
            assert any(s <= cells for s in supports)

    def test_minimal_supports_square(self):
        """Test the minimal covers of a full 2x2 grid."""
        full = [[["b"], ["b"]], [["b"], ["b"]]]
        assert list(minimal_supports(full)) == [((1, 1), (2, 2)), ((1, 2), (2, 1))]

    def test_minimal_supports_uncoverable(self):
        """Test that an empty column leaves no cover."""
        assert list(minimal_supports([[["b"], []], [["b"], []]])) == []

    @pytest.mark.parametrize("rows, cols", [(1, 3), (2, 3), (3, 3), (3, 2)])
    def test_minimal_supports_match_brute_force(self, rows, cols):
        """Test the lazy covers against every subset of a full grid, smallest first."""
        full = [[["b"]] * cols for _ in range(rows)]
        cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
        brute = []
        for size in range(1, len(cells) + 1):
            for subset in itertools.combinations(cells, size):
                row_counts = {i: sum(1 for a, _ in subset if a == i) for i, _ in subset}
                col_counts = {j: sum(1 for _, b in subset if b == j) for _, j in subset}
                covers = len(row_counts) == rows and len(col_counts) == cols
                if covers and all(row_counts[i] == 1 or col_counts[j] == 1 for i, j in subset):
                    brute.append(subset)
        assert list(minimal_supports(full)) == brute

    def test_minimal_supports_identity_first(self):
        """Test that the diagonal is the first cover of a full square grid."""
        full = [[["b"]] * 4 for _ in range(4)]
        assert next(minimal_supports(full)) == ((1, 1), (2, 2), (3, 3), (4, 4))

    def test_minimal_supports_check_can_abandon(self):
        """Test that the check hook runs during enumeration and can stop it."""
        calls = []

        def check():
            calls.append(1)
            if len(calls) > 5:
                raise TimeoutError

        full = [[["b"]] * 8 for _ in range(8)]
        with pytest.raises(TimeoutError):
            list(minimal_supports(full, check))
        assert len(calls) == 6


class TestStrategies:
    """Test cases for build_strategy and prune_dominated."""

    def test_identity_errors_zero(self, w2_oracle):
        """Test that the identity extension of a self-comparison has zero errors."""
        a = w2_oracle.left
        strategy = build_strategy(a, a, identity_extension(w2_oracle, ROOT))
        assert len(strategy.terminals) == 6
        assert all(t.error == ZERO for t in strategy.terminals)
        assert strategy.labels == {ROOT}
        assert strategy.viable

    def test_two_line_errors_undefined(self):
        """Test that terminals through two-line vertices have no error."""
        a = analysis_of("raag_path.tub")
        oracle = EquivalenceOracle(a, a)
        for extension in irreducible_extensions(oracle, ROOT):
            strategy = build_strategy(a, a, extension)
            assert all(t.error is None for t in strategy.terminals)
            assert strategy.labels == {Match(2, 2)}

    def test_unbounded_label_not_viable(self):
        """Test that a terminal pairing bounded with unbounded classes is not viable."""
        left = analysis_of("raag_path.tub")
        right = analysis_of("raag_unbounded.tub")
        oracle = EquivalenceOracle(left, right)
        strategies = [build_strategy(left, right, e) for e in irreducible_extensions(oracle, ROOT)]
        assert strategies
        assert not any(s.viable for s in strategies)

    def test_dominance(self, w2_oracle):
        """Test that a zero-error strategy prunes strategies whose ranges contain zero."""
        a = w2_oracle.left
        strategies = [build_strategy(a, a, e) for e in irreducible_extensions(w2_oracle, ROOT)]
        zero = build_strategy(a, a, identity_extension(w2_oracle, ROOT))
        wide = [s for s in strategies if s.summary[ROOT].low < ZERO < s.summary[ROOT].high]
        assert wide
        assert zero.dominates(wide[0])
        assert not wide[0].dominates(zero)
        assert prune_dominated([wide[0], zero]) == [zero]
        kept = prune_dominated(strategies)
        assert all(not any(k.dominates(o) for k in kept if k is not o) for o in kept)

    @pytest.mark.parametrize("scale", [Fraction(2), Fraction(3), Fraction(1, 5)])
    def test_errors_invariant_under_rescaling(self, scale):
        """Test that rescaling the metric of a vertex without class bases keeps every error."""
        plain = analysis_of("triple.tub")
        scaled = analysis_of("triple.tub", {"b": plain.grams["b"].scaled(scale)})
        assert plain.potential(TypeRef(1, 2)) != scaled.potential(TypeRef(1, 2))
        oracle = EquivalenceOracle(plain, plain)
        for m in (Match(1, 1), Match(1, 2), Match(3, 3)):
            for extension in irreducible_extensions(oracle, m):
                before = [t.error for t in build_strategy(plain, plain, extension).terminals]
                after = [t.error for t in build_strategy(scaled, scaled, extension).terminals]
                mixed = [t.error for t in build_strategy(plain, scaled, extension).terminals]
                assert before == after == mixed
