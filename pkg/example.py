#!/usr/bin/env python3
"""Example usage of the tubqi library."""

import os

from tubqi import TubularEngine
from tubqi.certificate import dumps
from tubqi.utils import CertificateError, TubularError

samples = os.getenv("TUBQI_SAMPLES", "samples")
max_candidates = os.getenv("TUBQI_MAX_CANDIDATES", None)


def main():
    """Demonstrate deciding, inspecting and witnessing."""

    engine = TubularEngine(max_candidates=int(max_candidates) if max_candidates else None)

    print("\n=== Inspect ===")

    try:
        w2 = engine.load_file(os.path.join(samples, "w2.tub"))
        report = engine.inspect(w2)
        for c in report["classes"]:
            heights = [t["potential"]["value"] for t in c["types"] if t["potential"]]
            print(f"Class {c['id']}: heights {heights}")
        print(f"Max slope: {report['max_slope']['value']}")
    except TubularError as e:
        print(f"Error: {e}")
        return

    print("\n=== Decide ===")

    swapped = engine.parse("vertex v\nedge x : v (1,0) -> v (2,2)\nedge y : v (0,1) -> v (4,4)\n")
    w3 = engine.load_file(os.path.join(samples, "w3.tub"))

    for name, other in (("swapped", swapped), ("w3", w3)):
        comparison = engine.decide(w2, other)
        decision = comparison.decision
        print(f"w2 vs {name}: {decision.verdict}")
        if decision.reason:
            print(f"  Reason: {decision.reason}")

    print("\n=== Witness ===")

    comparison = engine.decide(w2, swapped)
    certificate = comparison.certificate()
    print(f"Certificate size: {len(dumps(certificate))} bytes")

    try:
        ball = engine.witness(w2, swapped, certificate, radius=6)
        print(f"Radius {ball.radius}: {ball.nodes_visited} states, passed={ball.passed}")
    except CertificateError as e:
        print(f"Certificate rejected: {e}")

    print("\n=== Cache Statistics ===")
    stats = engine.get_cache_stats()
    print(f"Cache hits: {stats['hits']}, misses: {stats['misses']}")


if __name__ == "__main__":
    main()
