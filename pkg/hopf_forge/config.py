"""
Runtime configuration read from the environment (and an optional .env file).
"""

import os
from dataclasses import dataclass
from typing import Optional, Tuple

from dotenv import load_dotenv

from .errors import ConfigError

DEFAULT_MAX_COSETS = 100_000
DEFAULT_SEED = 20240101
DEFAULT_PROPERTY_CASES = 1000
DEFAULT_CHECK_CASES = 200
DEFAULT_EMBEDDING_CASES = 200
DEFAULT_BOUND = (4, 2)

_dotenv_loaded = False


@dataclass(frozen=True)
class Settings:
    """Resolved configuration values."""

    max_cosets: int = DEFAULT_MAX_COSETS
    seed: int = DEFAULT_SEED
    property_cases: int = DEFAULT_PROPERTY_CASES
    check_cases: int = DEFAULT_CHECK_CASES
    bound: Tuple[int, int] = DEFAULT_BOUND
    log_level: str = "WARNING"


def _int_from_env(variable: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(variable, raw, "an integer") from None
    if value < minimum:
        raise ConfigError(variable, raw, f"an integer >= {minimum}")
    return value


def parse_bound(text: str, variable: str = "--bound") -> Tuple[int, int]:
    """
    Parse an elementary-search bound written as ``L,P``.

    Args:
        text: The bound, e.g. ``"4,2"``
        variable: Name used in the error message

    Returns:
        (max_len, max_pow)
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ConfigError(variable, text, "two non-negative integers 'L,P'")
    max_len, max_pow = int(parts[0]), int(parts[1])
    if max_pow < 1:
        raise ConfigError(variable, text, "a power bound P >= 1")
    return max_len, max_pow


def load_settings(dotenv_path: Optional[str] = None) -> Settings:
    """
    Load settings from environment variables, reading a .env file first.

    Args:
        dotenv_path: Explicit .env file. If None, python-dotenv searches upwards
            from the working directory.

    Returns:
        Settings with every HOPF_FORGE_* variable applied
    """
    global _dotenv_loaded
    if dotenv_path is not None or not _dotenv_loaded:
        load_dotenv(dotenv_path, override=False)
        _dotenv_loaded = True

    raw_bound = os.getenv("HOPF_FORGE_BOUND")
    bound = DEFAULT_BOUND if not raw_bound else parse_bound(raw_bound, "HOPF_FORGE_BOUND")

    return Settings(
        max_cosets=_int_from_env("HOPF_FORGE_MAX_COSETS", DEFAULT_MAX_COSETS, minimum=1),
        seed=_int_from_env("HOPF_FORGE_SEED", DEFAULT_SEED),
        property_cases=_int_from_env("HOPF_FORGE_PROPERTY_CASES", DEFAULT_PROPERTY_CASES),
        check_cases=_int_from_env("HOPF_FORGE_CHECK_CASES", DEFAULT_CHECK_CASES),
        bound=bound,
        log_level=os.getenv("HOPF_FORGE_LOG_LEVEL", "WARNING").upper(),
    )
