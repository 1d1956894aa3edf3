from __future__ import annotations

from typing import Optional


class JetError(ValueError):
    """Base error for invalid jet-space input (ranges, widths, worlds)."""


class ParseError(JetError):
    def __init__(self, message: str, position: int, column: Optional[int] = None):
        self.position = position
        self.column = column if column is not None else position + 1
        super().__init__(f"{message} (at position {position}, column {self.column})")


class WorldMismatchError(JetError):
    """Raised when interior and boundary objects are mixed."""


class EvaluationError(JetError):
    def __init__(self, message: str, point: Optional[int] = None):
        self.point = point
        if point is not None:
            message = f"{message} (probe point {point})"
        super().__init__(message)
