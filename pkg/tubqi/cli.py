"""Command-line interface: decide, inspect and witness."""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from .certificate import dumps
from .engine import TubularEngine
from .feasibility.system import CONVENTIONS, EXAMPLE, Var
from .strategies import INCONCLUSIVE, QUASI_ISOMETRIC
from .utils.exceptions import CertificateError, InvalidGroupError, TubularError

logger = logging.getLogger(__name__)

EXIT_QI = 0
EXIT_NOT_QI = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3
# a positive verdict that failed its own re-verification
EXIT_INTERNAL = 4


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    return int(value) if value else None


def _env_float(name: str) -> Optional[float]:
    value = os.getenv(name)
    return float(value) if value else None


def _engine(args: argparse.Namespace) -> TubularEngine:
    return TubularEngine(
        max_candidates=args.max_candidates,
        timeout=args.timeout,
        convention=args.convention,
    )


def _report_decision(comparison) -> str:
    decision = comparison.decision
    stats = decision.statistics
    lines = [f"verdict: {decision.verdict}"]
    if decision.reason:
        lines.append(f"reason: {decision.reason}")
    for side, analysis in (("first", comparison.left), ("second", comparison.right)):
        bounded = sum(1 for c in analysis.classes if c.bounded)
        lines.append(
            f"{side} group: {len(analysis.graph.vertices)} vertices, "
            f"{len(analysis.classes)} classes ({bounded} bounded)"
        )
    if decision.strategy_set is not None:
        assignment = decision.assignment
        for m in decision.strategy_set.matches:
            if decision.strategy_set.bounded[m]:
                values = ", ".join(f"{k}={assignment[Var(k, m)]}" for k in "LMU")
                lines.append(f"match {m}: {values}")
            else:
                lines.append(f"match {m}: unbounded")
        lines.append(f"normalization: {assignment.normalization}")
    lines.append(
        f"candidates examined: {stats.candidates_examined}, "
        f"extensions enumerated: {stats.extensions_enumerated}, "
        f"elapsed: {stats.elapsed:.3f}s"
    )
    return "\n".join(lines)


def cmd_decide(args: argparse.Namespace) -> int:
    engine = _engine(args)
    left = engine.load_file(args.first)
    right = engine.load_file(args.second)
    try:
        comparison = engine.decide(left, right)
    except CertificateError as e:
        logger.error(f"Positive verdict failed re-verification: {e}")
        print(f"internal error: positive verdict failed re-verification: {e}", file=sys.stderr)
        return EXIT_INTERNAL

    if args.json:
        sys.stdout.write(dumps(comparison.certificate()))
    else:
        print(_report_decision(comparison))

    verdict = comparison.decision.verdict
    if verdict == QUASI_ISOMETRIC:
        return EXIT_QI
    if verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_NOT_QI


def _report_inspect(report: dict) -> str:
    lines = []
    for v in report["vertices"]:
        slopes = " ".join(f"({a},{b})" for a, b in v["slopes"])
        g = v["gram"]
        gram = ", ".join(f"{k}={g[k]['num']}/{g[k]['den']}" for k in ("g11", "g12", "g22"))
        order = v["symmetry_order"] if v["symmetry_order"] is not None else "-"
        lines.append(f"vertex {v['name']}: {v['lines']} lines {slopes}; symmetries {order}; gram {gram}")
    for c in report["classes"]:
        kind = "bounded" if c["bounded"] else "unbounded"
        lines.append(f"class {c['id']} ({kind}, {len(c['types'])} types)")
        for t in c["types"]:
            height = t["potential"]["value"] if t["potential"] else "-"
            lines.append(f"  type {t['index']}: {t['vertex']} ({t['slope'][0]},{t['slope'][1]}) height {height}")
    slope = report["max_slope"]
    shown = slope["value"] if slope else "undefined"
    lines.append(f"max slope: {shown} ({report['max_slope_unit']})")
    return "\n".join(lines)


def cmd_inspect(args: argparse.Namespace) -> int:
    engine = TubularEngine()
    report = engine.inspect(engine.load_file(args.file))
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        print(_report_inspect(report))
    return EXIT_QI


def cmd_witness(args: argparse.Namespace) -> int:
    engine = TubularEngine()
    left = engine.load_file(args.first)
    right = engine.load_file(args.second)
    try:
        with open(args.cert, encoding="utf-8") as f:
            certificate = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Failed to read certificate {args.cert}: {e}")
        print(f"error: cannot read certificate: {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        report = engine.witness(left, right, certificate, args.radius)
    except CertificateError as e:
        print(f"fail: {e}", file=sys.stderr)
        if e.path:
            print(f"path: {' / '.join(e.path)}", file=sys.stderr)
        return EXIT_NOT_QI

    if report.passed:
        print(
            f"pass: radius {report.radius}, {report.nodes_visited} states, "
            f"max |error| {report.max_error}"
        )
        return EXIT_QI
    print(f"fail: {report.failure}")
    print(f"path: {' -> '.join(map(str, report.path))}")
    return EXIT_NOT_QI


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tubqi", description="Quasi-isometry decisions for tubular groups")
    ap.add_argument(
        "--log-level",
        default=os.getenv("TUBQI_LOG_LEVEL", "WARNING"),
        help="Logging level (default from TUBQI_LOG_LEVEL, else WARNING)",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("decide", help="Decide whether two presentations are quasi-isometric")
    d.add_argument("first")
    d.add_argument("second")
    d.add_argument("--json", action="store_true", help="Print the certificate as JSON")
    d.add_argument("--max-candidates", type=int, default=_env_int("TUBQI_MAX_CANDIDATES"))
    d.add_argument("--timeout", type=float, default=_env_float("TUBQI_TIMEOUT"), help="Seconds")
    d.add_argument("--convention", choices=CONVENTIONS, default=EXAMPLE)
    d.set_defaults(func=cmd_decide)

    i = sub.add_parser("inspect", help="Print the pattern and P-set invariants of a presentation")
    i.add_argument("file")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_inspect)

    w = sub.add_parser("witness", help="Replay a certificate on a finite ball")
    w.add_argument("first")
    w.add_argument("second")
    w.add_argument("--cert", required=True)
    w.add_argument("--radius", type=int, default=8)
    w.set_defaults(func=cmd_witness)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_QI

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )

    try:
        return args.func(args)
    except InvalidGroupError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.report is not None:
            for diagnostic in e.report.errors():
                print(f"  {diagnostic.code}: {diagnostic.message}", file=sys.stderr)
        return EXIT_INPUT
    except TubularError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
