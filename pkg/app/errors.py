# app/errors.py
from __future__ import annotations

from typing import Any, List, Optional, Sequence


class BiplanarError(Exception):
    """Base class for every error raised by the package."""


class DomainError(BiplanarError, ValueError):
    """A precondition on an operation's input does not hold."""


class ParseError(BiplanarError, ValueError):
    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DegenerateGeometryError(DomainError):
    """Raised when a drawing is not in general position.

    `report` holds the VerificationReport produced by
    validate_general_position when one is available.
    """

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class ConstructionError(BiplanarError):
    pass


class SearchError(BiplanarError):
    pass


class CertificateError(BiplanarError):
    def __init__(
        self,
        message: str,
        missing: Sequence[Any] = (),
        extra: Sequence[Any] = (),
    ) -> None:
        super().__init__(message)
        self.missing: List[Any] = list(missing)
        self.extra: List[Any] = list(extra)
