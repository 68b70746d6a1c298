import pytest

from config import Settings


def test_threads_from_environment(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("HADACODEC_THREADS", "3")
    settings = Settings()
    assert settings.threads == 3
    assert settings.worker_count() == 3


def test_zero_threads_means_auto(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("HADACODEC_THREADS", "0")
    assert Settings().worker_count() >= 1


def test_negative_threads_rejected(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("HADACODEC_THREADS", "-1")
    with pytest.raises(ValueError):
        Settings()


def test_log_level_and_unknown_variables(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("HADACODEC_LOG_LEVEL", "debug")
    monkeypatch.setenv("HADACODEC_DATA_DIR", "/somewhere")
    settings = Settings()
    assert settings.log_level == "debug"
    assert set(Settings.model_fields) == {"threads", "log_level", "logfire_token"}
