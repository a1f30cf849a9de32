# Copyright 2024 Nicholas Jackson
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Tubular engine: parse, analyse and compare presentations with a shared cache."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from .cache import MemoryCache
from .certificate import classes_to_json, input_digest, load, to_json, verify, vertices_to_json, witness_ball
from .certificate.serialize import log_value
from .certificate.witness import BallReport
from .feasibility.system import CONVENTIONS, EXAMPLE
from .model import GraphOfGroups, parse_graph
from .pattern import Gram
from .psets import PsetAnalysis, analyze, max_slope
from .strategies import Decision, EquivalenceOracle, SearchLimits, search
from .utils.exceptions import ParseError

logger = logging.getLogger(__name__)

VERSION = "0.1.0"


@dataclass
class Comparison:
    """A decision together with the analyses it was made from."""

    decision: Decision
    left: PsetAnalysis
    right: PsetAnalysis

    def certificate(self) -> Dict[str, Any]:
        return to_json(self.decision, self.left, self.right, VERSION)


class TubularEngine:
    """Quasi-isometry decisions for tubular groups, with memoized pattern geometry."""

    def __init__(
        self,
        max_candidates: Optional[int] = None,
        timeout: Optional[float] = None,
        convention: str = EXAMPLE,
        cache_size: int = 4096,
    ):
        """
        Initialize the engine.

        Args:
            max_candidates: Cap on candidate strategy sets examined per comparison.
            timeout: Cap on seconds spent per comparison.
            convention: Constraint-role convention, "example" or "prose".
            cache_size: Maximum number of memoized equivalence results.
        """
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.limits = SearchLimits(max_candidates, timeout)
        self.convention = convention
        self.cache = MemoryCache(max_size=cache_size)

    def parse(self, text: str) -> GraphOfGroups:
        return parse_graph(text)

    def load_file(self, path) -> GraphOfGroups:
        """
        Read and parse a presentation file.

        Raises:
            ParseError: If the file cannot be read or parsed.
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Failed to read {path}: {e}")
            raise ParseError(f"cannot read {path}: {e}") from e
        graph = parse_graph(text)
        logger.info(f"Parsed {path}: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
        return graph

    def analyze(self, graph: GraphOfGroups, gram_overrides: Optional[Mapping[str, Gram]] = None) -> PsetAnalysis:
        return analyze(graph, gram_overrides)

    def oracle(self, left: PsetAnalysis, right: PsetAnalysis) -> EquivalenceOracle:
        return EquivalenceOracle(left, right, self.cache)

    def decide(self, left: GraphOfGroups, right: GraphOfGroups) -> Comparison:
        """
        Decide whether two presentations give quasi-isometric groups.

        A positive verdict is re-verified before it is returned.

        Raises:
            InvalidGroupError: If either presentation is not a tubular group.
            CertificateError: If a positive verdict fails re-verification.
        """
        a1, a2 = analyze(left), analyze(right)
        oracle = self.oracle(a1, a2)
        decision = search(a1, a2, oracle, self.limits, self.convention)
        if decision.quasi_isometric:
            verify(decision.strategy_set, a1, a2, decision.system, decision.assignment, self.convention, oracle)
        return Comparison(decision, a1, a2)

    def inspect(self, graph: GraphOfGroups) -> Dict[str, Any]:
        """Every pattern and P-set quantity of a presentation, with exact values."""
        analysis = analyze(graph)
        slope = max_slope(analysis)
        return {
            "input": input_digest(analysis),
            "vertices": vertices_to_json(analysis),
            "classes": classes_to_json(analysis),
            "max_slope": None
            if slope is None
            else {"total": log_value(slope.total), "steps": slope.steps, "value": slope.render()},
            "max_slope_unit": "height per vertex step",
        }

    def witness(
        self, left: GraphOfGroups, right: GraphOfGroups, certificate: Dict[str, Any], radius: int
    ) -> BallReport:
        """
        Re-verify a certificate and replay it on a ball of the given radius.

        Raises:
            CertificateError: If the certificate does not verify against the inputs.
        """
        a1, a2 = analyze(left), analyze(right)
        oracle = self.oracle(a1, a2)
        ss, system, assignment, convention = load(certificate, a1, a2, oracle)
        verify(ss, a1, a2, system, assignment, convention, oracle)
        return witness_ball(ss, assignment, radius, convention)

    def get_cache_stats(self) -> dict:
        """Get cache statistics."""
        return self.cache.get_stats()

    def clear_cache(self) -> None:
        """Clear all cached data."""
        self.cache.clear()
        logger.info("Cache cleared")
