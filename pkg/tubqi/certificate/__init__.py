"""Certificates: serialization, re-verification and the witness walk."""

from .serialize import classes_to_json, dumps, input_digest, load, to_json, vertices_to_json
from .verify import verify
from .witness import BallReport, witness_ball

__all__ = [
    "classes_to_json",
    "dumps",
    "input_digest",
    "load",
    "to_json",
    "vertices_to_json",
    "verify",
    "BallReport",
    "witness_ball",
]
