"""Utility modules for tubqi."""

from .exceptions import (
    TubularError,
    ParseError,
    UnknownVertexError,
    DuplicateNameError,
    ZeroVectorError,
    InvalidGroupError,
    PatternError,
    CertificateError,
    CacheError,
)

__all__ = [
    "TubularError",
    "ParseError",
    "UnknownVertexError",
    "DuplicateNameError",
    "ZeroVectorError",
    "InvalidGroupError",
    "PatternError",
    "CertificateError",
    "CacheError",
]
