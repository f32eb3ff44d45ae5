"""
Settings: layered defaults for the lab.

Layer 1: Built-in defaults (constants below)
Layer 2: Environment / .env (QWLAB_* variables)
Layer 3: Config file and CLI flags (applied by sweeps.spec)
"""

import os
from dataclasses import dataclass

from errors import ConfigurationError

TOOL_VERSION = "0.1.0"

# ── Layer 1: built-in defaults ──

DEFAULT_SAMPLE_FRAC = 0.1
DEFAULT_EPSILON = 1e-7
DEFAULT_N_RANGE = "1000:10000000:10"
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_JOURNAL_DIR = "logs"


@dataclass(frozen=True)
class LabSettings:
    sample_frac: float = DEFAULT_SAMPLE_FRAC
    epsilon: float = DEFAULT_EPSILON
    n_range: str = DEFAULT_N_RANGE
    log_level: str = DEFAULT_LOG_LEVEL
    journal_dir: str = DEFAULT_JOURNAL_DIR


def _float_env(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigurationError(name, f"not a number: {raw!r}") from e


def log_level() -> str:
    """QWLAB_LOG_LEVEL, upper-cased; readable before the rest of the settings."""
    return os.getenv("QWLAB_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


def load_settings() -> LabSettings:
    """Layer 2: read QWLAB_* overrides from the environment.

    Callers that want .env support call ``dotenv.load_dotenv`` first, as the
    entry script does. A malformed numeric variable raises ConfigurationError
    keyed by the variable name.
    """
    return LabSettings(
        sample_frac=_float_env("QWLAB_SAMPLE_FRAC", DEFAULT_SAMPLE_FRAC),
        epsilon=_float_env("QWLAB_EPSILON", DEFAULT_EPSILON),
        n_range=os.getenv("QWLAB_N_RANGE", DEFAULT_N_RANGE),
        log_level=log_level(),
        journal_dir=os.getenv("QWLAB_JOURNAL_DIR", DEFAULT_JOURNAL_DIR),
    )
