"""
Utilities Package
"""

from .errors import LabError, InputError, BoundExhausted, InvariantViolation

__all__ = ["LabError", "InputError", "BoundExhausted", "InvariantViolation"]
