import os
from pathlib import Path
from dotenv import load_dotenv

from utils.errors import InputError
from .lab_config import LabConfig, FieldConfig, SchreierConfig, SearchConfig, OutputConfig

# Load .env from project root
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(dotenv_path=env_path)


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {value!r}")


def load_config() -> LabConfig:
    """Build a LabConfig from defaults overridden by LEAVITT_LAB_* environment variables."""
    return LabConfig(
        log_level=os.getenv("LEAVITT_LAB_LOG_LEVEL", "WARNING"),
        log_file=os.getenv("LEAVITT_LAB_LOG_FILE", ""),
        field=FieldConfig(descriptor=os.getenv("LEAVITT_LAB_FIELD", "rat")),
        schreier=SchreierConfig(
            degree_bound=_int_env("LEAVITT_LAB_DEGREE_BOUND", 32),
            max_cosets=_int_env("LEAVITT_LAB_MAX_COSETS", 4096),
        ),
        search=SearchConfig(
            extraction_slack=_int_env("LEAVITT_LAB_EXTRACTION_SLACK", 3),
            gabriel_bound=_int_env("LEAVITT_LAB_GABRIEL_BOUND", 8),
            open_l_max=_int_env("LEAVITT_LAB_OPEN_L_MAX", 8),
            dual_degree_bound=_int_env("LEAVITT_LAB_DUAL_DEGREE_BOUND", 6),
        ),
        output=OutputConfig(),
    )
