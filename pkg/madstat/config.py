"""
Configuration Module

Central settings for the library, the CLI and the HTTP API.

Values are read (highest priority first) from:
1. Explicit overrides passed by the CLI flags
2. A key-value file (``KEY=value`` lines, loaded through python-dotenv)
3. Environment variables prefixed with ``MADSTAT_``
4. The defaults below

Example .env file:
    MADSTAT_DEFAULT_SEED=12345
    MADSTAT_REFERENCE_DRAWS=200000
    MADSTAT_LOG_LEVEL=DEBUG
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Seed used when the caller does not pass one ("5EED" + "3AD", M is not a hex digit)
DEFAULT_SEED = 0x5EED_3AD

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Settings(BaseSettings):
    """Runtime settings shared by the CLI and the API."""

    model_config = SettingsConfigDict(
        env_prefix="MADSTAT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    default_seed: int = Field(DEFAULT_SEED, ge=0, description="Seed used when none is given")
    log_level: str = Field("INFO", description="Root logging level")
    reference_draws: int = Field(100_000, ge=1000, description="Draws in simulated limit samples")
    reference_run_size: int = Field(10_000_000, ge=1000, description="n_ref for estimated theta")
    workers: int = Field(1, ge=1, description="Processes used by run_study")
    csv_float_format: str = Field("%.17g", description="Float format for CSV artifacts")
    api_title: str = Field("Mean Absolute Deviation Statistics API")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings from the environment and the default ``.env`` file (cached)."""
    return Settings()


def load_settings(config_file: Optional[Path] = None, **overrides) -> Settings:
    """
    Build settings from an explicit key-value file plus overrides.

    Args:
        config_file: Optional path to a ``KEY=value`` file
        **overrides: Field values that win over file and environment

    Returns:
        A fresh Settings instance (not cached)
    """
    clean = {key: value for key, value in overrides.items() if value is not None}
    if config_file is not None:
        return Settings(_env_file=config_file, **clean)
    return Settings(**clean)


def configure_logging(level: str = "INFO") -> None:
    """Configure root logging once; library modules only create named loggers."""
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT)
