"""Score approximations for one transition.

The a-derivative of the exact density involves d I_nu / d nu, so it is only
available by finite differences; the main-term formula is the small-step
leading part of both scores.
"""

from __future__ import annotations

from cirlan.errors import StepLeavesDomain
from cirlan.likelihood.density import log_transition_density
from cirlan.models.params import CirParams
from cirlan.models.results import ScorePair


def default_step(value: float) -> float:
    return max(1e-5, 1e-7 * abs(value))


def score_main_term(params: CirParams, dt: float, x: float, y: float) -> ScorePair:
    """Leading terms: the centered increment y - x - (a - b x) dt over 2 sigma x and -2 sigma."""
    increment = y - x - (params.a - params.b * x) * dt
    return ScorePair(
        s_a=increment / (2.0 * params.sigma * x),
        s_b=-increment / (2.0 * params.sigma),
    )


def score_fd(
    params: CirParams,
    dt: float,
    x: float,
    y: float,
    h_a: float | None = None,
    h_b: float | None = None,
) -> ScorePair:
    """Central differences of log_transition_density in a and in b.

    Raises:
        StepLeavesDomain: a - h_a falls below sigma.
    """
    h_a = default_step(params.a) if h_a is None else h_a
    h_b = default_step(params.b) if h_b is None else h_b
    if h_a <= 0 or h_b <= 0:
        raise ValueError("Finite-difference steps must be positive")
    if params.a - h_a < params.sigma:
        raise StepLeavesDomain(
            f"a - h_a = {params.a - h_a:.6g} is below sigma = {params.sigma:g}"
        )

    def logp(a: float, b: float) -> float:
        return float(log_transition_density(params.with_drift(a, b), dt, x, y))

    a, b = params.a, params.b
    return ScorePair(
        s_a=(logp(a + h_a, b) - logp(a - h_a, b)) / (2.0 * h_a),
        s_b=(logp(a, b + h_b) - logp(a, b - h_b)) / (2.0 * h_b),
    )
