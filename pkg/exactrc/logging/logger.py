"""Session run log: one JSON event per line in ``<session>/runs.log``."""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any

BASE_LOGS_DIR = Path.home() / ".config" / "exactrc" / "logs"

RESULT_LIMIT = 1000

_runs_logger: logging.Logger | None = None
_session_dir: Path | None = None
_runs_log_file: Path | None = None


def _new_session_dir() -> Path:
    stamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
    path = BASE_LOGS_DIR / f"session_{stamp}"
    path.mkdir(parents=True, exist_ok=True)
    return path


def _event(name: str, **fields: Any) -> dict[str, Any]:
    return {"timestamp": datetime.now().isoformat(), "event": name, **fields}


def _write(level: str, entry: dict[str, Any], kind: str, fallback: str) -> None:
    """Write ``entry`` as JSON at ``level``; plain text if it does not serialize."""
    logger = _setup_runs_logger()
    emit = getattr(logger, level)
    try:
        line = json.dumps(entry, default=str)
    except (TypeError, ValueError) as e:
        logger.warning(f"Failed to log {kind} as JSON: {e}")
        emit(fallback)
        return
    emit(line)


def initialize_session_log() -> Path:
    """Start a new session directory and write its ``session_start`` event.

    Returns:
        Path to the created session directory.
    """
    global _runs_logger, _session_dir, _runs_log_file

    _session_dir = _new_session_dir()
    _runs_log_file = _session_dir / "runs.log"
    _runs_logger = None
    _write("info", _event("session_start", message="exactrc session started"), "event", "")
    return _session_dir


def _setup_runs_logger() -> logging.Logger:
    """The ``exactrc.runs`` logger with a file handler on the current session."""
    global _runs_logger, _runs_log_file, _session_dir

    if _runs_logger is not None and _runs_logger.handlers:
        return _runs_logger

    if _runs_log_file is None:
        if _session_dir is None:
            _session_dir = _new_session_dir()
        _runs_log_file = _session_dir / "runs.log"

    handler = logging.FileHandler(_runs_log_file, encoding="utf-8")
    handler.setFormatter(
        logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    logger = logging.getLogger("exactrc.runs")
    logger.setLevel(logging.INFO)
    logger.propagate = False
    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()
    logger.addHandler(handler)
    _runs_logger = logger
    return logger


def log_computation(
    operation: str,
    parameters: dict[str, Any],
    result: Any,
    success: bool = True,
    duration_seconds: float | None = None,
) -> None:
    """Log one computation or command to the runs log.

    Args:
        operation: Name of the operation (e.g. ``exact_prc``, ``cli.predict``)
        parameters: Parameters the operation ran with
        result: Result summary, stringified and cut at ``RESULT_LIMIT`` characters
        success: Whether the operation succeeded
        duration_seconds: Optional wall time in seconds
    """
    text = str(result)
    if len(text) > RESULT_LIMIT:
        text = text[:RESULT_LIMIT] + "... [truncated]"
    entry = _event(
        "computation", operation=operation, parameters=parameters, result=text, success=success
    )
    if duration_seconds is not None:
        entry["duration_seconds"] = round(duration_seconds, 4)
    _write(
        "info",
        entry,
        "computation",
        f"Operation: {operation}, Success: {success}, Params: {parameters}",
    )


def log_error(operation: str, error: str, parameters: dict[str, Any] | None = None) -> None:
    """Log a failed operation at ERROR level."""
    entry = _event("error", operation=operation, error=error)
    if parameters:
        entry["parameters"] = parameters
    _write("error", entry, "error", f"Operation: {operation}, Error: {error}")


def log_session_end() -> None:
    _write("info", _event("session_end", message="exactrc session ended"), "event", "")


def get_session_dir() -> Path | None:
    """The current session directory, or None before the first log call."""
    return _session_dir
