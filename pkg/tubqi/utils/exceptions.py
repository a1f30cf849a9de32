"""Custom exceptions for tubqi."""

from typing import Optional


class TubularError(Exception):
    """Base exception for tubqi errors."""
    pass


class ParseError(TubularError):
    """Raised when an input document does not follow the grammar."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownVertexError(ParseError):
    """Raised when an edge refers to a vertex that was never declared."""
    pass


class DuplicateNameError(ParseError):
    """Raised when a vertex or edge name is declared twice."""
    pass


class ZeroVectorError(ParseError):
    """Raised when an attaching vector is (0,0)."""
    pass


class InvalidGroupError(TubularError):
    """Raised when a presentation fails validation."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class PatternError(TubularError):
    """Raised when an edge pattern has too few lines for an operation."""
    pass


class CertificateError(TubularError):
    """Raised when a certificate does not re-verify."""

    def __init__(self, message: str, path: Optional[list] = None):
        self.path = path or []
        super().__init__(message)


class CacheError(TubularError):
    """Raised when cache operations fail."""
    pass
