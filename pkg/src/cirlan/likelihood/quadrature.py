"""Adaptive quadrature against the transition law, used as a test and CLI oracle."""

from __future__ import annotations

import math
from collections.abc import Callable

from scipy import integrate

from cirlan.likelihood.density import log_transition_density
from cirlan.models.params import CirParams
from cirlan.sim.exact import transition_constants

# Integration window in conditional standard deviations around the mean.
WINDOW_SDS = 40.0


def transition_window(params: CirParams, dt: float, x: float) -> tuple[float, float, float, float]:
    """(lower, upper, mean, sd) of the integration window for p(dt, x, .)."""
    consts = transition_constants(params, dt)
    mean = consts.mean(x)
    sd = math.sqrt(consts.variance(x))
    return max(0.0, mean - WINDOW_SDS * sd), mean + WINDOW_SDS * sd, mean, sd


def expect_under_transition(
    params: CirParams,
    dt: float,
    x: float,
    func: Callable[[float], float],
    tol: float = 1e-10,
) -> float:
    """E[func(X_{t+dt}) | X_t = x] by adaptive quadrature.

    The window covers 40 conditional standard deviations either side of the
    mean (clipped at 0); the mass outside it is below double precision.
    """
    lower, upper, mean, sd = transition_window(params, dt, x)
    breaks = [p for p in (mean - 3 * sd, mean - sd, mean, mean + sd, mean + 3 * sd)
              if lower < p < upper]

    def integrand(y: float) -> float:
        if y <= 0.0:
            return 0.0
        return func(y) * math.exp(log_transition_density(params, dt, x, y))

    value, _ = integrate.quad(
        integrand, lower, upper, points=breaks, epsabs=tol, epsrel=tol, limit=400
    )
    return float(value)


def total_mass(params: CirParams, dt: float, x: float, tol: float = 1e-10) -> float:
    return expect_under_transition(params, dt, x, lambda _y: 1.0, tol=tol)
