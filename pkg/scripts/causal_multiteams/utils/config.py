"""
Configuration for causal multiteam tools.

Values come from the environment (optionally a .env file in the working
directory). They are read on every get_settings() call so a changed
environment is picked up without re-importing anything.
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from causal_multiteams.errors import ConfigError

# .env values never override variables already set in the process
load_dotenv(override=False)

logger = logging.getLogger(__name__)

CONDITIONAL_READINGS = ("delta", "gamma")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    max_states: int = 64
    max_law_candidates: int = 200000
    split_bound: int = 12
    workers: int = 4
    batch_size: int = 64
    conditional_rhs: str = "delta"
    log_level: str = "WARNING"


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be at least 1, got {value}")
    return value


def get_settings() -> Settings:
    """Read settings from the environment."""
    reading = os.getenv("CML_CONDITIONAL_RHS", "delta").strip().lower()
    if reading not in CONDITIONAL_READINGS:
        raise ConfigError(
            f"CML_CONDITIONAL_RHS must be one of {', '.join(CONDITIONAL_READINGS)}, got {reading!r}"
        )

    level = os.getenv("CML_LOG_LEVEL", "WARNING").strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"CML_LOG_LEVEL is not a logging level: {level!r}")

    settings = Settings(
        max_states=_positive_int("CML_MAX_STATES", 64),
        max_law_candidates=_positive_int("CML_MAX_LAW_CANDIDATES", 200000),
        split_bound=_positive_int("CML_SPLIT_BOUND", 12),
        workers=_positive_int("CML_WORKERS", 4),
        batch_size=_positive_int("CML_BATCH_SIZE", 64),
        conditional_rhs=reading,
        log_level=level,
    )
    logger.debug("[CONFIG] %s", settings)
    return settings


def configure_logging(level: str) -> None:
    """Install a root handler. Only the CLI calls this."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT)
