from __future__ import annotations

import pytest
from click.testing import CliRunner

from ruledforge import create_cli
from ruledforge.config import build_config


@pytest.fixture
def cfg():
    return build_config()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def cli():
    return create_cli()
