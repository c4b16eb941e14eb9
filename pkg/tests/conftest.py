"""Shared test fixtures for cirlan."""

from __future__ import annotations

import pytest

from cirlan.models.params import CirParams, SamplingScheme
from cirlan.sim.rng import RngStream


@pytest.fixture
def sub_params() -> CirParams:
    """Reference subcritical model: a/sigma = 11 satisfies condition (A)."""
    return CirParams(a=1.1, b=0.5, sigma=0.1, x0=1.0)


@pytest.fixture
def crit_params() -> CirParams:
    return CirParams(a=1.1, b=0.0, sigma=0.1, x0=1.0)


@pytest.fixture
def super_params() -> CirParams:
    return CirParams(a=1.1, b=-0.5, sigma=0.1, x0=1.0)


@pytest.fixture
def short_scheme() -> SamplingScheme:
    return SamplingScheme(n=200, delta=0.05)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(seed=12345)


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("CIRLAN_SEED", raising=False)
