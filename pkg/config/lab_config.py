"""Configuration settings for the lab."""

from dataclasses import dataclass, field as dataclass_field
from typing import Optional


@dataclass
class FieldConfig:
    """Ground field configuration."""
    descriptor: str = "rat"  # "rat" or "fp:P"


@dataclass
class SchreierConfig:
    """Quotient table and Schreier basis configuration."""
    degree_bound: int = 32
    basis_cap: Optional[int] = None  # levels for partial bases of non-closed tables
    max_cosets: int = 4096


@dataclass
class SearchConfig:
    """Bounds for the witness searches."""
    extraction_slack: int = 3
    gabriel_bound: int = 8
    open_l_max: int = 8
    dual_degree_bound: int = 6
    expansion_guard: int = 64


@dataclass
class OutputConfig:
    """Command output configuration."""
    json: bool = False


@dataclass
class LabConfig:
    """Main lab configuration."""
    log_level: str = "WARNING"
    log_file: str = ""

    # Sub-configurations
    field: FieldConfig = dataclass_field(default_factory=FieldConfig)
    schreier: SchreierConfig = dataclass_field(default_factory=SchreierConfig)
    search: SearchConfig = dataclass_field(default_factory=SearchConfig)
    output: OutputConfig = dataclass_field(default_factory=OutputConfig)
