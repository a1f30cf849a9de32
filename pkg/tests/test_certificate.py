"""Tests for certificates: serialization, re-verification and the witness walk."""

import copy
import json
from pathlib import Path

import pytest
from tubqi import TubularEngine
from tubqi.certificate import dumps, load, verify, witness_ball
from tubqi.feasibility import PROSE, Assignment, Var
from tubqi.model import LogValue, parse_graph
from tubqi.utils import CertificateError

SAMPLES = Path(__file__).parent.parent / "samples"

QI_CASES = [
    ("w2.tub", "w2.tub"),
    ("wise.tub", "wise.tub"),
    ("triple.tub", "triple.tub"),
    ("raag_path.tub", "raag_double.tub"),
    ("raag_unbounded.tub", "raag_unbounded.tub"),
    ("u.tub", "u.tub"),
]

W2_SWAPPED = "vertex v\nedge x : v (1,0) -> v (2,2)\nedge y : v (0,1) -> v (4,4)\n"


def load_graph(name):
    return parse_graph((SAMPLES / name).read_text())


@pytest.fixture
def engine():
    return TubularEngine()


@pytest.fixture
def swapped(engine):
    left, right = load_graph("w2.tub"), parse_graph(W2_SWAPPED)
    return engine, left, right, engine.decide(left, right)


class TestSerialization:
    """Test cases for to_json and dumps."""

    def test_byte_identical(self, engine):
        """Test that two runs give the same certificate bytes."""
        left, right = load_graph("w2.tub"), parse_graph(W2_SWAPPED)
        first = dumps(engine.decide(left, right).certificate())
        second = dumps(TubularEngine().decide(left, right).certificate())
        assert first == second

    def test_document_shape(self, swapped):
        """Test the top-level keys and the verdict of a positive certificate."""
        _, _, _, comparison = swapped
        doc = comparison.certificate()
        assert doc["verdict"] == "quasi-isometric"
        assert doc["schema"] == 1
        assert doc["convention"] == "example"
        assert set(doc["inputs"]) == {"left", "right"}
        assert doc["vertices"]["left"][0]["symmetry_order"] == 6
        assert "elapsed" not in doc["stats"]
        assert doc["assignment"]["normalization"] == "m-zero-margin"
        roles = [s["role"] for s in doc["strategies"]]
        assert roles == ["positive", "negative"] * len(doc["matches"])

    def test_negative_certificate(self, engine):
        """Test that a negative verdict has a reason and no assignment."""
        doc = engine.decide(load_graph("w2.tub"), load_graph("w3.tub")).certificate()
        assert doc["verdict"] == "not-quasi-isometric"
        assert doc["reason"]
        assert doc["assignment"] is None
        assert doc["matches"] == []

    def test_exact_values(self, swapped):
        """Test that potentials are stored as exact rationals with a rendering."""
        _, _, _, comparison = swapped
        types = comparison.certificate()["classes"]["left"][0]["types"]
        assert types[1]["potential"] == {"half_log2_of": {"num": "4", "den": "1"}, "value": "1"}


class TestLoadAndVerify:
    """Test cases for load and verify."""

    def test_round_trip(self, swapped):
        """Test that a certificate loads back to the decision it records."""
        engine, left, right, comparison = swapped
        a1, a2 = engine.analyze(left), engine.analyze(right)
        doc = json.loads(dumps(comparison.certificate()))
        ss, system, assignment, convention = load(doc, a1, a2)
        decision = comparison.decision
        assert ss.matches == decision.strategy_set.matches
        assert [(c.x, c.y, c.c) for c in system.constraints] == [
            (c.x, c.y, c.c) for c in decision.system.constraints
        ]
        assert assignment == decision.assignment
        verify(ss, a1, a2, system, assignment, convention)

    def test_wrong_inputs(self, swapped, engine):
        """Test that a certificate is refused for other inputs."""
        _, left, _, comparison = swapped
        with pytest.raises(CertificateError):
            engine.witness(left, load_graph("w3.tub"), comparison.certificate(), 2)

    def test_tampered_error(self, swapped):
        """Test that an edited terminal error is caught."""
        engine, left, right, comparison = swapped
        doc = copy.deepcopy(comparison.certificate())
        terminal = doc["strategies"][0]["terminals"][0]
        terminal["error"] = {"half_log2_of": {"num": "3", "den": "1"}, "value": "0.792481"}
        with pytest.raises(CertificateError) as info:
            engine.witness(left, right, doc, 2)
        assert info.value.path

    def test_corrupted_assignment(self, swapped):
        """Test that an assignment violating the system is caught."""
        engine, left, right, comparison = swapped
        doc = copy.deepcopy(comparison.certificate())
        for entry in doc["assignment"]["values"]:
            if entry["var"]["kind"] == "U":
                entry["value"] = {"half_log2_of": {"num": "1", "den": "4"}, "value": "-1"}
        with pytest.raises(CertificateError) as info:
            engine.witness(left, right, doc, 2)
        assert "violates" in str(info.value)

    def test_match_out_of_range(self, swapped):
        """Test that class ids the inputs do not have are a certificate error."""
        engine, left, right, comparison = swapped
        doc = copy.deepcopy(comparison.certificate())
        for entry in doc["matches"] + doc["strategies"]:
            entry["match"] = [7, 1]
        with pytest.raises(CertificateError) as info:
            engine.witness(left, right, doc, 2)
        assert "malformed" in str(info.value)

    def test_missing_key(self, swapped):
        """Test that a structurally incomplete document is a certificate error."""
        engine, left, right, comparison = swapped
        doc = copy.deepcopy(comparison.certificate())
        del doc["strategies"][0]["entries"][0]["pairs"]
        with pytest.raises(CertificateError) as info:
            engine.witness(left, right, doc, 2)
        assert "pairs" in str(info.value)

    def test_not_a_document(self, swapped):
        """Test that a non-object document is refused."""
        engine, left, right, _ = swapped
        with pytest.raises(CertificateError):
            engine.witness(left, right, [], 2)

    def test_unknown_convention(self, swapped):
        """Test that an unknown convention in the document is refused."""
        engine, left, right, comparison = swapped
        doc = copy.deepcopy(comparison.certificate())
        doc["convention"] = "other"
        with pytest.raises(CertificateError) as info:
            engine.witness(left, right, doc, 2)
        assert "convention" in str(info.value)

    def test_unclosed_set(self, swapped):
        """Test that dropping a match breaks closure or covering."""
        engine, left, right, comparison = swapped
        a1, a2 = engine.analyze(left), engine.analyze(right)
        decision = comparison.decision
        ss = decision.strategy_set.copy()
        ss.remove(ss.matches[0])
        with pytest.raises(CertificateError):
            verify(ss, a1, a2, decision.system, decision.assignment, decision.convention)


class TestWitnessBall:
    """Test cases for witness_ball."""

    @pytest.mark.parametrize("first, second", QI_CASES)
    def test_qi_cases_pass(self, engine, first, second):
        """Test that every positive certificate survives a walk of radius 8."""
        left, right = load_graph(first), load_graph(second)
        comparison = engine.decide(left, right)
        assert comparison.decision.quasi_isometric
        report = engine.witness(left, right, comparison.certificate(), 8)
        assert report.passed, report.failure
        assert report.nodes_visited > 0

    def test_swapped_pair_passes(self, swapped):
        """Test the walk on a pair whose strategies carry nonzero errors."""
        engine, left, right, comparison = swapped
        report = engine.witness(left, right, comparison.certificate(), 8)
        assert report.passed
        for m, (low, high) in report.ranges.items():
            assignment = comparison.decision.assignment
            assert assignment[Var("L", m)] <= low <= high <= assignment[Var("U", m)]

    def test_corrupted_assignment_fails(self, swapped):
        """Test that bounds excluding the starting error fail at depth zero."""
        _, _, _, comparison = swapped
        decision = comparison.decision
        values = dict(decision.assignment.values)
        for m in decision.strategy_set.matches:
            values[Var("U", m)] = LogValue.from_height(-1)
        report = witness_ball(decision.strategy_set, Assignment(values), 8)
        assert not report.passed
        assert report.path == [decision.strategy_set.matches[0]]
        assert "depth 0" in report.failure

    @pytest.mark.parametrize("second", ["w2.tub", None])
    def test_prose_convention_passes(self, second):
        """Test the walk on certificates built with the prose convention."""
        engine = TubularEngine(convention=PROSE)
        left = load_graph("w2.tub")
        right = load_graph(second) if second else parse_graph(W2_SWAPPED)
        comparison = engine.decide(left, right)
        assert comparison.decision.quasi_isometric
        certificate = comparison.certificate()
        assert certificate["convention"] == PROSE
        report = engine.witness(left, right, certificate, 8)
        assert report.passed, report.failure
