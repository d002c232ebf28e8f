"""Unit tests for runtime settings (config/settings.py)."""
import logging
import os

import pytest

from config.settings import RuntimeSettings, load_settings


@pytest.fixture
def isolated_environ(monkeypatch):
    """A private copy of os.environ, so values loaded from .env files do not leak."""
    monkeypatch.setattr(os, "environ", dict(os.environ))


class TestLoadSettings:

    def test_defaults(self, monkeypatch, tmp_path):
        monkeypatch.delenv("DTORS_THREADS")
        settings = load_settings(str(tmp_path / "missing.env"))
        assert settings.threads == (os.cpu_count() or 1)
        assert settings.size_cap == 10_000
        assert settings.ell_max == 4
        assert settings.retry_limit == 8
        assert settings.log_level == "WARNING"

    def test_environment_overrides(self, monkeypatch, tmp_path):
        monkeypatch.setenv("DTORS_THREADS", "3")
        monkeypatch.setenv("DTORS_SIZE_CAP", "500")
        monkeypatch.setenv("DTORS_RETRY_LIMIT", "0")
        monkeypatch.setenv("DTORS_LOG_LEVEL", "debug")
        settings = load_settings(str(tmp_path / "missing.env"))
        assert settings.threads == 3
        assert settings.size_cap == 500
        assert settings.retry_limit == 0
        assert settings.log_level_value == logging.DEBUG

    def test_env_file(self, isolated_environ, tmp_path):
        env_file = tmp_path / ".env"
        env_file.write_text("DTORS_ELL_MAX=6\nDTORS_THREADS=8\n")
        settings = load_settings(str(env_file))
        assert settings.ell_max == 6
        # variables already in the environment win over the file
        assert settings.threads == 1

    @pytest.mark.parametrize("name,value", [
        ("DTORS_THREADS", "many"),
        ("DTORS_THREADS", "0"),
        ("DTORS_SIZE_CAP", "-5"),
        ("DTORS_ELL_MAX", "1.5"),
        ("DTORS_RETRY_LIMIT", "-1"),
        ("DTORS_LOG_LEVEL", "LOUD"),
    ])
    def test_invalid(self, monkeypatch, tmp_path, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValueError, match=name):
            load_settings(str(tmp_path / "missing.env"))

    def test_blank_value_uses_default(self, monkeypatch, tmp_path):
        monkeypatch.setenv("DTORS_ELL_MAX", " ")
        assert load_settings(str(tmp_path / "missing.env")).ell_max == 4


def test_settings_are_frozen():
    settings = RuntimeSettings(threads=1)
    with pytest.raises(AttributeError):
        settings.threads = 2
