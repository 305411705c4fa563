"""Logging module for exactrc."""

from .logger import (
    get_session_dir,
    initialize_session_log,
    log_computation,
    log_error,
    log_session_end,
)

__all__ = [
    "initialize_session_log",
    "log_computation",
    "log_error",
    "log_session_end",
    "get_session_dir",
]
