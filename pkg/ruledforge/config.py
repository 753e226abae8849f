"""Application configuration for RuledForge."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

DEFAULT_REWRITE_BUDGET = 10_000
PACKAGE_FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


@dataclass(frozen=True)
class AppConfig:
    """Runtime configuration values used by the CLI and verification suites."""

    rewrite_budget: int
    fixtures_dir: Path
    log_level: str


def build_config() -> AppConfig:
    """Build configuration from environment variables with safe defaults."""

    raw_budget = os.environ.get("RULEDFORGE_REWRITE_BUDGET", str(DEFAULT_REWRITE_BUDGET))
    try:
        rewrite_budget = int(raw_budget)
    except ValueError:
        raise ValueError(f"RULEDFORGE_REWRITE_BUDGET must be an integer, got {raw_budget!r}") from None
    if rewrite_budget < 1:
        raise ValueError(f"RULEDFORGE_REWRITE_BUDGET must be positive, got {rewrite_budget}")

    fixtures_dir = Path(os.environ.get("RULEDFORGE_FIXTURES_DIR", PACKAGE_FIXTURES_DIR))
    if not fixtures_dir.is_dir():
        raise ValueError(f"Fixtures directory not found: {fixtures_dir}")

    log_level = os.environ.get("RULEDFORGE_LOG_LEVEL", "WARNING").upper()
    if not isinstance(logging.getLevelName(log_level), int):
        raise ValueError(f"RULEDFORGE_LOG_LEVEL is not a logging level: {log_level!r}")

    return AppConfig(rewrite_budget=rewrite_budget, fixtures_dir=fixtures_dir, log_level=log_level)
