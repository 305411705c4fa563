"""Configuration management for exactrc."""

import json
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    InitSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

# Load environment variables from .env file
load_dotenv()

# Default config directory
CONFIG_DIR = Path(__file__).parent.parent.parent / "config"
CONFIG_FILE = CONFIG_DIR / "config.json"
USER_CONFIG_FILE = Path.home() / ".config" / "exactrc" / "config.json"


def load_defaults_config() -> dict[str, Any]:
    """Load numerical defaults from the JSON config files.

    The user file overrides the project file key by key. Unknown keys are
    dropped later by the settings model.

    Returns:
        Dictionary of setting name to value (empty when no file exists)
    """
    merged: dict[str, Any] = {}
    for path in (CONFIG_FILE, USER_CONFIG_FILE):
        if not path.exists():
            continue
        try:
            with open(path, encoding="utf-8") as f:
                config = json.load(f)
        except (OSError, json.JSONDecodeError):
            continue
        if isinstance(config, dict):
            merged.update(config.get("defaults", config))
    return merged


class _JsonDefaultsSource(InitSettingsSource):
    """Settings source backed by ``load_defaults_config``."""

    def __init__(self, settings_cls: type[BaseSettings]):
        super().__init__(settings_cls, init_kwargs=load_defaults_config())


class Settings(BaseSettings):
    """Application settings: tolerances, resource caps and worker count.

    Values come from (highest priority first) constructor arguments, ``EXACTRC_*``
    environment variables, ``.env``, the JSON config files, then the defaults below.
    """

    model_config = SettingsConfigDict(
        env_prefix="EXACTRC_",
        env_file=".env",
        extra="ignore",
    )

    threads: int = Field(default=1, ge=1)
    crit_tol: float = Field(default=1e-9, gt=0)
    lattice_tol: float = Field(default=1e-9, gt=0)
    max_types: int = Field(default=50_000_000, ge=1)
    max_cells: int = Field(default=100_000_000, ge=1)
    max_support: int = Field(default=1_000_000, ge=1)
    brute_force_cap: int = Field(default=100_000_000, ge=1)
    mc_chunk: int = Field(default=1024, ge=1)
    series_tol: float = Field(default=1e-12, gt=0)
    quad_tol: float = Field(default=1e-10, gt=0)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            _JsonDefaultsSource(settings_cls),
            file_secret_settings,
        )


# Global settings instance
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get or create the global settings instance.

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next ``get_settings`` call reloads them."""
    global _settings
    _settings = None
