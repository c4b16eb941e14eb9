"""Deterministic Fisher information in the subcritical and critical regimes."""

from __future__ import annotations

import math

from cirlan.core import classify_regime
from cirlan.errors import DomainError, WrongRegime
from cirlan.models.params import CirParams, Regime
from cirlan.models.results import FisherMatrix


def fisher_info_subcritical(params0: CirParams) -> FisherMatrix:
    """(1 / 2 sigma) [[b/(a - sigma), -1], [-1, a/b]]."""
    if classify_regime(params0) != Regime.SUBCRITICAL:
        raise WrongRegime(f"Subcritical information needs b > 0 (got b={params0.b})")
    a, b, sigma = params0.a, params0.b, params0.sigma
    if a <= sigma:
        raise DomainError(f"Subcritical information needs a > sigma (got a={a}, sigma={sigma})")
    scale = 1.0 / (2.0 * sigma)
    return FisherMatrix(i_aa=scale * b / (a - sigma), i_ab=-scale, i_bb=scale * a / b)


def critical_info_deterministic(params0: CirParams) -> float:
    """The (a, a) entry 1 / (2 sigma (a - sigma)) of the critical information.

    The (b, b) entry is random and comes from the simulated limit draw.
    Returns +inf when the denominator underflows near a = sigma.
    """
    a, sigma = params0.a, params0.sigma
    if a <= sigma:
        raise DomainError(f"Critical information needs a > sigma (got a={a}, sigma={sigma})")
    denom = 2.0 * sigma * (a - sigma)
    if denom == 0.0:
        return math.inf
    value = 1.0 / denom
    return value if math.isfinite(value) else math.inf
