from __future__ import annotations


class QSearchError(Exception):
    """Root of every error raised by this package."""


class ConfigError(QSearchError, ValueError):
    pass


class CircuitParseError(QSearchError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DimacsError(QSearchError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class RegisterMismatchError(QSearchError, ValueError):
    pass


class ScheduleError(QSearchError, ValueError):
    pass


class EnumerationBudgetError(QSearchError, ValueError):
    pass


class AncillaBudgetError(QSearchError):
    pass


class UnboundOracleError(QSearchError, KeyError):
    def __init__(self, tag: str):
        super().__init__(tag)
        self.tag = tag

    def __str__(self) -> str:
        return f"oracle tag {self.tag!r} is not bound"


class DecompositionError(QSearchError):
    pass


class SearchFailure(QSearchError):
    pass


class BoundViolation(QSearchError, AssertionError):
    pass
