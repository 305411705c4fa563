"""Unit tests for exactrc.logging (session run log)."""

import json
from unittest.mock import MagicMock, patch

from exactrc.logging import logger as log_module


def read_events(session_dir):
    """Parse the JSON payload of every runs.log line."""
    lines = (session_dir / "runs.log").read_text(encoding="utf-8").splitlines()
    return [json.loads(line.split(" - ", 3)[3]) for line in lines]


def test_initialize_session_log_creates_session_dir(isolated_logs):
    """A session directory under the logs root holds runs.log with a start event."""
    session_dir = log_module.initialize_session_log()
    assert session_dir.parent == isolated_logs
    assert session_dir.name.startswith("session_")
    assert log_module.get_session_dir() == session_dir
    assert [e["event"] for e in read_events(session_dir)] == ["session_start"]


def test_get_session_dir_before_init_returns_none():
    assert log_module.get_session_dir() is None


def test_first_event_without_init_opens_a_session(isolated_logs):
    """Logging before initialize_session_log still lands in a fresh session."""
    log_module.log_computation("exact_prc", {"n": 3}, 0.25)
    (session_dir,) = isolated_logs.glob("session_*")
    assert log_module._runs_log_file == session_dir / "runs.log"
    (event,) = read_events(session_dir)
    assert event["operation"] == "exact_prc"
    assert event["result"] == "0.25"


def test_events_are_appended_in_order(isolated_logs):
    session_dir = log_module.initialize_session_log()
    log_module.log_computation("predict", {"n": [10]}, [])
    log_module.log_error("cli.predict", "bad rate")
    log_module.log_session_end()
    events = [e["event"] for e in read_events(session_dir)]
    assert events == ["session_start", "computation", "error", "session_end"]


def test_parameters_that_json_cannot_encode_are_stringified(isolated_logs):
    session_dir = log_module.initialize_session_log()
    log_module.log_computation("load_channel", {"path": isolated_logs / "c.json"}, "ok")
    event = read_events(session_dir)[-1]
    assert event["parameters"]["path"].endswith("c.json")


def test_log_session_end():
    """log_session_end writes session_end event to the runs log."""
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        log_module.log_session_end()
    mock_logger.info.assert_called_once()
    data = json.loads(mock_logger.info.call_args[0][0])
    assert data["event"] == "session_end"


def test_log_computation_success():
    """log_computation writes a JSON computation event."""
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        log_module.log_computation(
            "exact_prc", {"n": 10}, {"value": 0.1}, duration_seconds=0.123456
        )
    data = json.loads(mock_logger.info.call_args[0][0])
    assert data["event"] == "computation"
    assert data["operation"] == "exact_prc"
    assert data["parameters"] == {"n": 10}
    assert data["success"] is True
    assert data["duration_seconds"] == 0.1235


def test_log_computation_truncates_long_result():
    """log_computation truncates results over 1000 chars."""
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        log_module.log_computation("predict", {}, "x" * 1500)
    data = json.loads(mock_logger.info.call_args[0][0])
    assert len(data["result"]) == 1000 + len("... [truncated]")
    assert "duration_seconds" not in data


def test_log_computation_json_fallback():
    """log_computation falls back to warning + info when JSON serialization fails."""
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        with patch("exactrc.logging.logger.json.dumps", side_effect=TypeError("bad")):
            log_module.log_computation("mc_prc", {"seed": 1}, "ok")
    mock_logger.warning.assert_called_once()
    assert "Failed to log computation" in mock_logger.warning.call_args[0][0]
    assert "Operation: mc_prc" in mock_logger.info.call_args[0][0]


def test_log_error_success():
    """log_error writes a JSON error entry."""
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        log_module.log_error("cli.predict", "rate outside (0, I)", {"rate": "I*2"})
    mock_logger.error.assert_called_once()
    data = json.loads(mock_logger.error.call_args[0][0])
    assert data["event"] == "error"
    assert data["error"] == "rate outside (0, I)"
    assert data["parameters"] == {"rate": "I*2"}


def test_log_error_json_fallback():
    mock_logger = MagicMock()
    with patch.object(log_module, "_setup_runs_logger", return_value=mock_logger):
        with patch("exactrc.logging.logger.json.dumps", side_effect=ValueError("bad")):
            log_module.log_error("cli.oracle", "boom")
    mock_logger.warning.assert_called_once()
    assert "Error: boom" in mock_logger.error.call_args[0][0]
