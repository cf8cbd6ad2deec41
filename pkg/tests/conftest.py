"""Shared test fixtures."""


import numpy as np
import pytest

from ldp_lab.core.config import Settings


@pytest.fixture
def tmp_lab(tmp_path):
    """Provide a temporary lab directory."""
    return tmp_path / "lab"


@pytest.fixture
def settings(tmp_lab):
    """Provide test settings with temp directories."""
    return Settings(
        threads=1,
        lab_dir=tmp_lab,
        output_dir=tmp_lab / "out",
        record_runs=True,
    )


@pytest.fixture
def wired_settings(settings, monkeypatch):
    """Make get_settings() everywhere return the temp-dir test settings."""
    import ldp_lab.core.config as config

    monkeypatch.setattr(config, "_settings", settings)
    settings.ensure_dirs()
    return settings


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
