"""Unit tests for exactrc.config.config (load_defaults_config, Settings)."""

import json
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from exactrc.config import config as config_module

MISSING = Path("/nonexistent/exactrc/config.json")


def test_load_defaults_config_project_file(tmp_path):
    """load_defaults_config reads the "defaults" block of the project file."""
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({"defaults": {"threads": 3, "crit_tol": 1e-7}}))
    with patch.object(config_module, "CONFIG_FILE", config_file):
        with patch.object(config_module, "USER_CONFIG_FILE", MISSING):
            result = config_module.load_defaults_config()
    assert result == {"threads": 3, "crit_tol": 1e-7}


def test_load_defaults_config_user_file_overrides(tmp_path):
    """Keys in the user file win over the project file."""
    project = tmp_path / "project.json"
    project.write_text(json.dumps({"defaults": {"threads": 2, "mc_chunk": 64}}))
    user = tmp_path / "user.json"
    user.write_text(json.dumps({"threads": 6}))
    with patch.object(config_module, "CONFIG_FILE", project):
        with patch.object(config_module, "USER_CONFIG_FILE", user):
            result = config_module.load_defaults_config()
    assert result == {"threads": 6, "mc_chunk": 64}


def test_load_defaults_config_skips_malformed_file(tmp_path):
    broken = tmp_path / "config.json"
    broken.write_text("{not json")
    with patch.object(config_module, "CONFIG_FILE", broken):
        with patch.object(config_module, "USER_CONFIG_FILE", MISSING):
            assert config_module.load_defaults_config() == {}


def test_load_defaults_config_no_files():
    with patch.object(config_module, "CONFIG_FILE", MISSING):
        with patch.object(config_module, "USER_CONFIG_FILE", MISSING):
            assert config_module.load_defaults_config() == {}


def test_project_config_matches_builtin_defaults():
    """The shipped config.json restates the model defaults."""
    with patch.object(config_module, "USER_CONFIG_FILE", MISSING):
        loaded = config_module.load_defaults_config()
    fields = config_module.Settings.model_fields
    for key, value in loaded.items():
        assert fields[key].default == value


def test_settings_from_json_defaults():
    with patch.object(
        config_module, "load_defaults_config", return_value={"mc_chunk": 16, "unknown": 1}
    ):
        settings = config_module.Settings()
    assert settings.mc_chunk == 16
    assert not hasattr(settings, "unknown")


def test_settings_env_overrides_json():
    """EXACTRC_* variables take precedence over the JSON files."""
    with patch.object(config_module, "load_defaults_config", return_value={"threads": 2}):
        with patch.dict("os.environ", {"EXACTRC_THREADS": "8", "EXACTRC_SERIES_TOL": "1e-10"}):
            settings = config_module.Settings()
    assert settings.threads == 8
    assert settings.series_tol == 1e-10


def test_settings_reject_invalid_values():
    with patch.object(config_module, "load_defaults_config", return_value={}):
        with patch.dict("os.environ", {"EXACTRC_THREADS": "0"}):
            with pytest.raises(ValidationError):
                config_module.Settings()


def test_get_settings_is_cached_until_reset():
    first = config_module.get_settings()
    assert config_module.get_settings() is first
    config_module.reset_settings()
    assert config_module.get_settings() is not first
