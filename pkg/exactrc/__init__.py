"""exactrc - exact asymptotics of the random-coding error probability."""

__version__ = "1.0.0"

# Main entry point
from .ui import main

__all__ = ["main"]
