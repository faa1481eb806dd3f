"""Tests for environment configuration."""

import pytest

from hopf_forge.config import (
    DEFAULT_BOUND,
    DEFAULT_CHECK_CASES,
    DEFAULT_EMBEDDING_CASES,
    DEFAULT_MAX_COSETS,
    DEFAULT_PROPERTY_CASES,
    load_settings,
    parse_bound,
)
from hopf_forge.errors import ConfigError

VARIABLES = [
    "HOPF_FORGE_MAX_COSETS",
    "HOPF_FORGE_SEED",
    "HOPF_FORGE_PROPERTY_CASES",
    "HOPF_FORGE_CHECK_CASES",
    "HOPF_FORGE_BOUND",
    "HOPF_FORGE_LOG_LEVEL",
]


@pytest.fixture
def clean_env(monkeypatch):
    """Unset every HOPF_FORGE_* variable and restore them afterwards."""
    for name in VARIABLES:
        # set first so monkeypatch remembers to remove what a .env file adds
        monkeypatch.setenv(name, "0")
        monkeypatch.delenv(name)
    return monkeypatch


def test_parse_bound():
    """Bounds are written L,P."""
    assert parse_bound("4,2") == (4, 2)
    assert parse_bound(" 3 , 1 ") == (3, 1)
    for bad in ("4", "4,2,1", "a,b", "4,0", "-1,2"):
        with pytest.raises(ConfigError):
            parse_bound(bad)


def test_defaults(clean_env, tmp_path):
    """Without variables every setting takes its default."""
    empty = tmp_path / ".env"
    empty.write_text("")
    settings = load_settings(str(empty))
    assert settings.max_cosets == DEFAULT_MAX_COSETS
    assert settings.bound == DEFAULT_BOUND
    assert settings.log_level == "WARNING"
    assert settings.property_cases == DEFAULT_PROPERTY_CASES == 1000
    assert settings.check_cases == DEFAULT_CHECK_CASES
    assert DEFAULT_EMBEDDING_CASES == 200


def test_environment_overrides(clean_env, tmp_path):
    """Variables override the defaults."""
    clean_env.setenv("HOPF_FORGE_MAX_COSETS", "500")
    clean_env.setenv("HOPF_FORGE_BOUND", "3,1")
    clean_env.setenv("HOPF_FORGE_LOG_LEVEL", "debug")
    empty = tmp_path / ".env"
    empty.write_text("")
    settings = load_settings(str(empty))
    assert settings.max_cosets == 500
    assert settings.bound == (3, 1)
    assert settings.log_level == "DEBUG"


def test_dotenv_file(clean_env, tmp_path):
    """A .env file supplies values not already in the environment."""
    path = tmp_path / ".env"
    path.write_text("HOPF_FORGE_SEED=7\nHOPF_FORGE_PROPERTY_CASES=12\nHOPF_FORGE_CHECK_CASES=3\n")
    settings = load_settings(str(path))
    assert settings.seed == 7
    assert settings.property_cases == 12
    assert settings.check_cases == 3


def test_invalid_values(clean_env, tmp_path):
    """Non-integers and out-of-range values are configuration errors."""
    empty = tmp_path / ".env"
    empty.write_text("")
    clean_env.setenv("HOPF_FORGE_MAX_COSETS", "lots")
    with pytest.raises(ConfigError) as info:
        load_settings(str(empty))
    assert info.value.variable == "HOPF_FORGE_MAX_COSETS"
    clean_env.setenv("HOPF_FORGE_MAX_COSETS", "0")
    with pytest.raises(ConfigError):
        load_settings(str(empty))
