"""Error hierarchy shared by the services and the command line."""

from typing import Optional


class LabError(Exception):
    """Base class for every error raised by the lab."""

    exit_code = 1


class InputError(LabError, ValueError):
    """Invalid user input: unknown ids, mismatched graphs, malformed text."""

    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


class BoundExhausted(LabError):
    """A bounded search ended without a decision."""

    exit_code = 2


class InvariantViolation(LabError, AssertionError):
    """A post-condition failed. Always a bug."""

    exit_code = 3
