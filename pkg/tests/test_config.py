from __future__ import annotations

import pytest

from ruledforge.config import DEFAULT_REWRITE_BUDGET, PACKAGE_FIXTURES_DIR, build_config


def test_defaults(monkeypatch):
    for name in ("RULEDFORGE_REWRITE_BUDGET", "RULEDFORGE_FIXTURES_DIR", "RULEDFORGE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    cfg = build_config()
    assert cfg.rewrite_budget == DEFAULT_REWRITE_BUDGET
    assert cfg.fixtures_dir == PACKAGE_FIXTURES_DIR
    assert cfg.log_level == "WARNING"


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("RULEDFORGE_REWRITE_BUDGET", "250")
    monkeypatch.setenv("RULEDFORGE_FIXTURES_DIR", str(tmp_path))
    monkeypatch.setenv("RULEDFORGE_LOG_LEVEL", "debug")
    cfg = build_config()
    assert (cfg.rewrite_budget, cfg.fixtures_dir, cfg.log_level) == (250, tmp_path, "DEBUG")


@pytest.mark.parametrize(
    ("name", "value", "message"),
    [
        ("RULEDFORGE_REWRITE_BUDGET", "lots", "must be an integer"),
        ("RULEDFORGE_REWRITE_BUDGET", "0", "must be positive"),
        ("RULEDFORGE_FIXTURES_DIR", "/nonexistent/ruledforge", "Fixtures directory not found"),
        ("RULEDFORGE_LOG_LEVEL", "chatty", "not a logging level"),
    ],
)
def test_bad_values(monkeypatch, name, value, message):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=message):
        build_config()
