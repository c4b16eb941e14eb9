"""Tests for model parameter validation."""

import math

import pytest
from pydantic import ValidationError

from cirlan.models.params import (
    CONDITION_A_THRESHOLD,
    CirParams,
    LocalAlternative,
    RatePair,
    SamplingScheme,
)


class TestCirParams:
    def test_valid(self):
        params = CirParams(a=1.1, b=0.5, sigma=0.1, x0=2.0)
        assert params.shape == pytest.approx(11.0)
        assert params.nu == pytest.approx(10.0)

    def test_x0_defaults_to_one(self):
        assert CirParams(a=1.0, b=0.0, sigma=0.5).x0 == 1.0

    def test_a_equal_sigma_allowed(self):
        params = CirParams(a=0.1, b=0.5, sigma=0.1)
        assert params.nu == 0.0

    def test_a_below_sigma_rejected(self):
        with pytest.raises(ValidationError, match="a must be >= sigma"):
            CirParams(a=0.05, b=0.5, sigma=0.1)

    @pytest.mark.parametrize("sigma", [0.0, -0.1])
    def test_nonpositive_sigma_rejected(self, sigma: float):
        with pytest.raises(ValidationError, match="sigma must be positive"):
            CirParams(a=1.0, b=0.5, sigma=sigma)

    def test_nonpositive_x0_rejected(self):
        with pytest.raises(ValidationError, match="x0 must be positive"):
            CirParams(a=1.0, b=0.5, sigma=0.1, x0=0.0)

    def test_nan_rejected(self):
        with pytest.raises(ValidationError):
            CirParams(a=math.nan, b=0.5, sigma=0.1)

    def test_frozen(self):
        params = CirParams(a=1.0, b=0.5, sigma=0.1)
        with pytest.raises(ValidationError):
            params.a = 2.0  # type: ignore[misc]

    def test_with_drift_keeps_sigma_and_x0(self):
        params = CirParams(a=1.0, b=0.5, sigma=0.1, x0=3.0)
        moved = params.with_drift(1.2, -0.1)
        assert (moved.a, moved.b, moved.sigma, moved.x0) == (1.2, -0.1, 0.1, 3.0)

    def test_condition_a_threshold(self):
        assert CONDITION_A_THRESHOLD == pytest.approx(5.0 + 3.0 * math.sqrt(2.0))


class TestSamplingScheme:
    def test_horizon(self):
        assert SamplingScheme(n=5000, delta=0.02).horizon == pytest.approx(100.0)

    def test_minimum_steps(self):
        with pytest.raises(ValidationError, match="n must be at least 2"):
            SamplingScheme(n=1, delta=0.1)

    @pytest.mark.parametrize("delta", [0.0, -0.01, 1.5])
    def test_delta_range(self, delta: float):
        with pytest.raises(ValidationError, match="delta must be in"):
            SamplingScheme(n=10, delta=delta)

    def test_delta_one_allowed(self):
        assert SamplingScheme(n=10, delta=1.0).delta == 1.0


class TestLocalAlternative:
    def test_defaults_are_zero(self):
        assert LocalAlternative().is_zero

    def test_one_component(self):
        assert not LocalAlternative(u=0.0, v=1.0).is_zero


class TestRatePair:
    def test_valid(self):
        rates = RatePair(phi1=0.1, phi2=0.2)
        assert rates.phi2 == 0.2

    @pytest.mark.parametrize("phi", [0.0, -1.0])
    def test_nonpositive_rejected(self, phi: float):
        with pytest.raises(ValidationError, match="strictly positive"):
            RatePair(phi1=phi, phi2=0.1)
