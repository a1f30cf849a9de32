"""JSON certificates for decisions, and loading them back."""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..feasibility.solver import Assignment
from ..feasibility.system import CONVENTIONS, Constraint, ConstraintSystem, Provenance, Var
from ..model.graph import digest, format_graph
from ..model.logvalue import LogValue
from ..psets.classes import Match, PsetAnalysis, TypeRef
from ..strategies.extensions import EquivalenceOracle, Extension, TypeBijection
from ..strategies.search import Decision
from ..strategies.strategy import Strategy, StrategySet, build_strategy
from ..utils.exceptions import CertificateError

logger = logging.getLogger(__name__)

SCHEMA = 1


def rational(x: Fraction) -> Dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(doc: Dict[str, str]) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def log_value(v: Optional[LogValue]) -> Optional[Dict[str, Any]]:
    if v is None:
        return None
    return {"half_log2_of": rational(v.q), "value": v.render()}


def parse_log_value(doc: Optional[Dict[str, Any]]) -> Optional[LogValue]:
    if doc is None:
        return None
    return LogValue(parse_rational(doc["half_log2_of"]))


def input_digest(analysis: PsetAnalysis) -> str:
    """Digest of the canonical document of an analysed presentation."""
    return digest(format_graph(analysis.graph))


def _ref(ref: TypeRef) -> List[int]:
    return [ref.class_id, ref.type_index]


def _match(m: Match) -> List[int]:
    return [m.left, m.right]


def _var(v: Var) -> Dict[str, Any]:
    return {"kind": v.kind, "match": _match(v.match)}


def _parse_var(doc: Dict[str, Any]) -> Var:
    return Var(doc["kind"], Match(*doc["match"]))


def vertices_to_json(analysis: PsetAnalysis) -> List[Dict[str, Any]]:
    """Per-vertex slopes, symmetry order and the canonical metric in use."""
    vertices = []
    for vertex in analysis.graph.canonical_vertices():
        gram = analysis.grams[vertex]
        vertices.append(
            {
                "name": vertex,
                "lines": len(analysis.patterns[vertex]),
                "slopes": [list(s.vector()) for s in analysis.patterns[vertex].slopes],
                "symmetry_order": len(analysis.groups[vertex]) or None,
                "gram": {"g11": rational(gram.g11), "g12": rational(gram.g12), "g22": rational(gram.g22)},
            }
        )
    return vertices


def classes_to_json(analysis: PsetAnalysis) -> List[Dict[str, Any]]:
    return [
        {
            "id": c.id,
            "bounded": c.bounded,
            "types": [
                {
                    "index": index,
                    "vertex": node.vertex,
                    "slope": list(node.slope.vector()),
                    "potential": log_value(c.potential(index)),
                }
                for index, node in enumerate(c.nodes, start=1)
            ],
        }
        for c in analysis.classes
    ]


def _strategy_to_json(m: Match, role: str, strategy: Strategy) -> Dict[str, Any]:
    return {
        "match": _match(m),
        "role": role,
        "entries": [
            {
                "row": i,
                "column": j,
                "witness": [list(r) for r in bijection.witness.rows()],
                "pairs": [[_ref(a), _ref(b)] for a, b in bijection.pairs],
            }
            for i, j, bijection in strategy.extension.entries()
        ],
        "terminals": [
            {"label": _match(t.label), "entry": list(t.entry), "error": log_value(t.error)}
            for t in strategy.terminals
        ],
    }


def system_to_json(system: ConstraintSystem) -> List[Dict[str, Any]]:
    return [
        {
            "x": _var(c.x),
            "y": _var(c.y),
            "c": log_value(c.c),
            "source": c.provenance.source,
            "rule": c.provenance.rule,
        }
        for c in system.constraints
    ]


def system_from_json(doc: List[Dict[str, Any]]) -> ConstraintSystem:
    return ConstraintSystem(
        Constraint(
            _parse_var(c["x"]),
            _parse_var(c["y"]),
            parse_log_value(c["c"]),
            Provenance(c["source"], rule=c["rule"]),
        )
        for c in doc
    )


def assignment_to_json(assignment: Assignment) -> Dict[str, Any]:
    return {
        "normalization": assignment.normalization,
        "values": [
            {"var": _var(v), "value": log_value(value)}
            for v, value in sorted(assignment.values.items())
        ],
    }


def assignment_from_json(doc: Dict[str, Any]) -> Assignment:
    values = {_parse_var(e["var"]): parse_log_value(e["value"]) for e in doc["values"]}
    return Assignment(values, doc["normalization"])


def to_json(
    decision: Decision, left: PsetAnalysis, right: PsetAnalysis, version: str
) -> Dict[str, Any]:
    """
    Build the certificate document of a decision.

    The document has no wall-clock data, so the same inputs always give
    the same bytes.
    """
    doc: Dict[str, Any] = {
        "schema": SCHEMA,
        "version": version,
        "verdict": decision.verdict,
        "convention": decision.convention,
        "reason": decision.reason,
        "inputs": {"left": input_digest(left), "right": input_digest(right)},
        "vertices": {"left": vertices_to_json(left), "right": vertices_to_json(right)},
        "classes": {"left": classes_to_json(left), "right": classes_to_json(right)},
        "matches": [],
        "strategies": [],
        "system": [],
        "assignment": None,
        "stats": decision.statistics.as_dict(),
    }
    ss = decision.strategy_set
    if ss is not None:
        doc["matches"] = [{"match": _match(m), "bounded": ss.bounded[m]} for m in ss.matches]
        for m in ss.matches:
            doc["strategies"].append(_strategy_to_json(m, "positive", ss.positive[m]))
            doc["strategies"].append(_strategy_to_json(m, "negative", ss.negative[m]))
    if decision.system is not None:
        doc["system"] = system_to_json(decision.system)
    if decision.assignment is not None:
        doc["assignment"] = assignment_to_json(decision.assignment)
    return doc


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _rebuild_extension(
    oracle: EquivalenceOracle, m: Match, entries: List[Dict[str, Any]], path: List[str]
) -> Extension:
    rows = oracle.left.cls(m.left).size
    cols = oracle.right.cls(m.right).size
    matrix: List[List[Optional[TypeBijection]]] = [[None] * cols for _ in range(rows)]
    for entry in entries:
        i, j = entry["row"], entry["column"]
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise CertificateError(f"entry ({i},{j}) outside the {rows}x{cols} matrix", path)
        pairs = tuple((TypeRef(*a), TypeRef(*b)) for a, b in entry["pairs"])
        candidates = [b for b in oracle.entry_bijections(m, i, j) if b.pairs == pairs]
        if not candidates:
            raise CertificateError(
                f"entry ({i},{j}) is not induced by any linear equivalence", path + [f"entry ({i},{j})"]
            )
        matrix[i - 1][j - 1] = candidates[0]
    return Extension(m, tuple(tuple(r) for r in matrix))


def load(
    doc: Dict[str, Any], left: PsetAnalysis, right: PsetAnalysis, oracle: Optional[EquivalenceOracle] = None
) -> Tuple[StrategySet, ConstraintSystem, Assignment, str]:
    """
    Rebuild a certificate against the two analysed inputs.

    Bijections are looked up again among the induced ones and terminals
    are recomputed, so the returned strategies never trust the document.

    Returns:
        (strategy set, system, assignment, convention).

    Raises:
        CertificateError: If the document does not belong to these inputs,
            is malformed, or names an entry no linear equivalence induces.
    """
    if not isinstance(doc, dict):
        raise CertificateError("certificate is not a JSON object")
    if doc.get("inputs") != {"left": input_digest(left), "right": input_digest(right)}:
        raise CertificateError("certificate was issued for different inputs")
    if doc.get("assignment") is None:
        raise CertificateError(f"certificate has verdict {doc.get('verdict')!r} and no assignment")
    if doc.get("convention") not in CONVENTIONS:
        raise CertificateError(f"unknown convention {doc.get('convention')!r}")

    try:
        return _load(doc, left, right, oracle or EquivalenceOracle(left, right))
    except (KeyError, IndexError, TypeError, ValueError, AttributeError, ZeroDivisionError) as e:
        logger.error(f"Malformed certificate: {type(e).__name__}: {e}")
        raise CertificateError(f"malformed certificate: {type(e).__name__}: {e}") from e


def _load(
    doc: Dict[str, Any], left: PsetAnalysis, right: PsetAnalysis, oracle: EquivalenceOracle
) -> Tuple[StrategySet, ConstraintSystem, Assignment, str]:
    ss = StrategySet()
    recorded = {tuple(e["match"]): e["bounded"] for e in doc["matches"]}
    strategies: Dict[Tuple[Match, str], Strategy] = {}
    for s in doc["strategies"]:
        m = Match(*s["match"])
        path = [str(m), s["role"]]
        extension = _rebuild_extension(oracle, m, s["entries"], path)
        strategy = build_strategy(left, right, extension)
        recorded_errors = [parse_log_value(t["error"]) for t in s["terminals"]]
        if recorded_errors != [t.error for t in strategy.terminals]:
            raise CertificateError("recorded terminal errors do not match recomputation", path)
        strategies[(m, s["role"])] = strategy

    for (left_id, right_id), bounded in recorded.items():
        m = Match(left_id, right_id)
        if (m, "positive") not in strategies or (m, "negative") not in strategies:
            logger.error(f"Certificate is missing a strategy for {m}")
            raise CertificateError(f"missing strategy for {m}", [str(m)])
        ss.assign(m, strategies[(m, "positive")], strategies[(m, "negative")], bounded)

    return ss, system_from_json(doc["system"]), assignment_from_json(doc["assignment"]), doc["convention"]
