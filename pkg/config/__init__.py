"""Configuration package."""

from .lab_config import (
    LabConfig,
    FieldConfig,
    SchreierConfig,
    SearchConfig,
    OutputConfig,
)
from .settings import load_config

__all__ = [
    "LabConfig",
    "FieldConfig",
    "SchreierConfig",
    "SearchConfig",
    "OutputConfig",
    "load_config",
]
