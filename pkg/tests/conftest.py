"""Shared fixtures for the dccr test suite."""

from __future__ import annotations

import pytest

from app.algebra.theta import RationalTheta, RealTheta
from app.config.settings import reset_settings
from app.verify.rng import make_rng


@pytest.fixture
def isolated_settings(tmp_path, monkeypatch):
    """Fresh settings with outputs under tmp_path."""
    monkeypatch.setenv("DCCR_OUTPUT_DIR", str(tmp_path / "runs"))
    monkeypatch.setenv("DCCR_LOG_TO_FILE", "false")
    reset_settings()
    yield tmp_path / "runs"
    reset_settings()


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture(params=[RationalTheta(1, 5), RationalTheta(13, 34), RealTheta(0.7), RealTheta(2 ** 0.5)],
                ids=["1/5", "13/34", "real-0.7", "real-sqrt2"])
def theta(request):
    return request.param
