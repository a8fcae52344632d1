from zole.settings import get_settings


def test_defaults():
    settings = get_settings()
    assert settings.workers == 1
    assert settings.log_dir is None
    assert settings.log_level == "INFO"


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("ZOLE_WORKERS", "4")
    monkeypatch.setenv("ZOLE_LOG_DIR", str(tmp_path))
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.workers == 4
    assert settings.log_dir == tmp_path


def test_settings_read_only_the_environment(monkeypatch, tmp_path):
    # .env is loaded once by the CLI; Settings itself never opens it
    (tmp_path / ".env").write_text("ZOLE_WORKERS=6\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    assert get_settings().workers == 1
