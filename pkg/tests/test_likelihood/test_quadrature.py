"""Tests for the transition-law quadrature oracle."""

import pytest

from cirlan.likelihood.quadrature import expect_under_transition, total_mass, transition_window
from cirlan.models.params import CirParams
from cirlan.sim.exact import transition_constants


class TestTransitionWindow:
    def test_clipped_at_zero(self):
        params = CirParams(a=0.1, b=0.5, sigma=0.1)
        lower, upper, mean, sd = transition_window(params, 1.0, 0.01)
        assert lower == 0.0
        assert upper > mean + sd


class TestExpectations:
    @pytest.mark.parametrize("dt", [0.001, 0.1, 1.0])
    def test_mass(self, sub_params: CirParams, dt: float):
        assert total_mass(sub_params, dt, 1.0) == pytest.approx(1.0, abs=1e-8)

    def test_conditional_mean(self, super_params: CirParams):
        consts = transition_constants(super_params, 0.1)
        mean = expect_under_transition(super_params, 0.1, 1.5, lambda y: y)
        assert mean == pytest.approx(consts.mean(1.5), rel=1e-8)

    def test_conditional_variance(self, sub_params: CirParams):
        consts = transition_constants(sub_params, 0.1)
        m = consts.mean(1.0)
        var = expect_under_transition(sub_params, 0.1, 1.0, lambda y: (y - m) ** 2)
        assert var == pytest.approx(consts.variance(1.0), rel=1e-6)
