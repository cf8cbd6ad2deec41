"""Tests for settings, random streams and ordered reductions."""

import math

import numpy as np
import pytest

from ldp_lab.core.config import Settings, get_settings
from ldp_lab.core.exceptions import BoundaryError, DomainError, LdpLabError, NumericalError
from ldp_lab.core.seeding import derive_rng, ordered_map, ordered_mean, seed_from_rng


def test_derive_rng_streams():
    a = derive_rng(5, 1, 0).random(4)
    b = derive_rng(5, 1, 0).random(4)
    c = derive_rng(5, 1, 1).random(4)
    d = derive_rng(6, 1, 0).random(4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_derive_rng_accepts_negative_and_large_seeds():
    derive_rng(-1, 2)
    derive_rng(2**64 + 3, 2)


def test_seed_from_rng_is_reproducible():
    assert seed_from_rng(np.random.default_rng(1)) == seed_from_rng(np.random.default_rng(1))


def test_ordered_map_keeps_order():
    items = list(range(50))
    assert ordered_map(lambda i: i * i, items, threads=1) == ordered_map(lambda i: i * i, items, threads=8)
    assert ordered_map(str, [], threads=4) == []


def test_ordered_mean():
    mean, sem = ordered_mean([1.0, 2.0, 3.0, 4.0])
    assert mean == 2.5
    assert sem == pytest.approx(math.sqrt((5 / 3) / 4))
    assert ordered_mean([7.0]) == (7.0, 0.0)
    assert all(math.isnan(v) for v in ordered_mean([]))


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("LDP_LAB_THREADS", "4")
    monkeypatch.setenv("LDP_LAB_LAB_DIR", str(tmp_path / "lab"))
    monkeypatch.setenv("LDP_LAB_RECORD_RUNS", "false")
    settings = Settings()
    assert settings.threads == 4
    assert settings.record_runs is False
    assert settings.db_path == tmp_path / "lab" / "data" / "runs.db"
    assert settings.db_url.startswith("sqlite:///")


def test_settings_reject_zero_threads():
    with pytest.raises(ValueError):
        Settings(threads=0)


def test_get_settings_is_cached(wired_settings):
    assert get_settings() is wired_settings


def test_optimizer_overrides(settings, tmp_path):
    assert settings.load_optimizer_overrides() == {}
    path = tmp_path / "opt.yaml"
    path.write_text("rounds: 3\n")
    settings.optimizer_config = path
    assert settings.load_optimizer_overrides() == {"rounds": 3}


def test_exception_hierarchy():
    assert issubclass(BoundaryError, DomainError)
    assert issubclass(DomainError, LdpLabError)
    err = NumericalError("stuck", residual=0.5)
    assert err.residual == 0.5
    assert str(err) == "stuck"
