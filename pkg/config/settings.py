"""
Settings module for runtime configuration.

This module loads DTORS_* environment variables (optionally from a .env
file) into an immutable RuntimeSettings value that command runners receive
through their dependency container.
"""
import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class RuntimeSettings:
    """Runtime limits and defaults.

    Attributes:
        threads: Upper bound on sweep worker processes.
        size_cap: Largest predicted z-degree of g~ the commands will build.
        ell_max: Default field-degree bound for exhaustive certificate checks.
        retry_limit: Redraws allowed for unlucky random combinations.
        log_level: Root logging level name.
    """
    threads: int
    size_cap: int = 10_000
    ell_max: int = 4
    retry_limit: int = 8
    log_level: str = "WARNING"

    @property
    def log_level_value(self) -> int:
        return getattr(logging, self.log_level)


def _positive_int(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


def load_settings(env_file: Optional[str] = None) -> RuntimeSettings:
    """Builds RuntimeSettings from the environment.

    Args:
        env_file: Optional path of a .env file. Defaults to python-dotenv's
            search from the working directory.

    Returns:
        RuntimeSettings: The validated settings.

    Raises:
        ValueError: If a DTORS_* variable holds an invalid value.
    """
    load_dotenv(env_file)
    level = os.getenv("DTORS_LOG_LEVEL", "WARNING").strip().upper()
    if level not in _LOG_LEVELS:
        raise ValueError(f"DTORS_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got {level!r}")
    return RuntimeSettings(
        threads=_positive_int("DTORS_THREADS", os.cpu_count() or 1),
        size_cap=_positive_int("DTORS_SIZE_CAP", 10_000),
        ell_max=_positive_int("DTORS_ELL_MAX", 4),
        retry_limit=_positive_int("DTORS_RETRY_LIMIT", 8, minimum=0),
        log_level=level,
    )
