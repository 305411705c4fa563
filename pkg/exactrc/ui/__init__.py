"""UI module for exactrc."""

from .cli import cli, main

__all__ = ["cli", "main"]
