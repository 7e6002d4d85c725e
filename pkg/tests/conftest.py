import logging

import pytest
from click.testing import CliRunner

from src.models.settings import Settings
from src.modules.field_core import make_chain_field
from src.modules.field_core import make_grid_field


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point settings at an empty temporary file and clear overriding env vars."""
    monkeypatch.setenv("ISPH_ENV_FILE", str(tmp_path / "missing.env"))
    for name in Settings.model_fields:
        monkeypatch.delenv(name.upper(), raising=False)
    yield
    # The CLI installs root handlers on every run.
    logging.getLogger().handlers.clear()


@pytest.fixture
def cli_runner():
    """Create a CLI runner for testing CLI commands."""
    return CliRunner()


@pytest.fixture
def w_field():
    """1D field with minima 0 (vertex 0), 1 (vertex 2) and 0.5 (vertex 4)."""
    return make_chain_field([0.0, 3.0, 1.0, 2.0, 0.5])


@pytest.fixture
def bowl_grid():
    """3x3 grid with minima at both ends of the diagonal and in the centre."""
    return make_grid_field(
        [0.0, 5.0, 6.0, 5.0, 2.0, 5.0, 6.0, 5.0, 1.0], dims=(3, 3), connectivity=4
    )
