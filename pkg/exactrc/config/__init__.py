"""Configuration module for exactrc."""

from .config import Settings, get_settings, load_defaults_config, reset_settings

__all__ = ["Settings", "get_settings", "load_defaults_config", "reset_settings"]
