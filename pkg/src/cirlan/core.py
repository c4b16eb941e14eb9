"""Regimes, rates and local alternatives around a base parameter set."""

from __future__ import annotations

import logging
import math

from cirlan.errors import (
    AlternativeLeavesParameterSpace,
    CirDomainError,
    CriticalHorizonTooShort,
    WrongRegime,
)
from cirlan.models.params import (
    CONDITION_A_THRESHOLD,
    CirParams,
    LocalAlternative,
    RatePair,
    Regime,
    SamplingScheme,
    SchemeWarning,
)

logger = logging.getLogger(__name__)


def classify_regime(params: CirParams) -> Regime:
    """Sign of b decides the regime; no tolerance band around zero."""
    if params.b > 0:
        return Regime.SUBCRITICAL
    if params.b < 0:
        return Regime.SUPERCRITICAL
    return Regime.CRITICAL


def check_condition_a(params: CirParams) -> bool:
    return params.a / params.sigma > CONDITION_A_THRESHOLD


def local_rates(params0: CirParams, scheme: SamplingScheme) -> RatePair:
    """Rates (phi1, phi2) at which a and b are perturbed.

    Args:
        params0: Base parameters; only the sign and value of b matter.
        scheme: Observation grid; the horizon n * delta drives the rates.

    Returns:
        Subcritical: (1/sqrt(T), 1/sqrt(T)). Critical: (1/sqrt(log T), 1/T).
        Supercritical: (1, exp(b0 * T / 2)).

    Raises:
        CriticalHorizonTooShort: critical regime with T <= 1.
    """
    horizon = scheme.horizon
    regime = classify_regime(params0)
    if regime == Regime.SUBCRITICAL:
        rate = 1.0 / math.sqrt(horizon)
        return RatePair(phi1=rate, phi2=rate)
    if regime == Regime.CRITICAL:
        if horizon <= 1.0:
            raise CriticalHorizonTooShort(
                f"Critical rates need n*delta > 1 (got {horizon:g})"
            )
        return RatePair(phi1=1.0 / math.sqrt(math.log(horizon)), phi2=1.0 / horizon)
    phi2 = math.exp(params0.b * horizon / 2.0)
    if phi2 == 0.0:
        raise CirDomainError(
            f"Supercritical rate exp(b0*T/2) underflows at T={horizon:g}"
        )
    return RatePair(phi1=1.0, phi2=phi2)


def local_alternative_params(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    rates: RatePair | None = None,
) -> CirParams:
    """(a0 + u*phi1, b0 + v*phi2) with sigma and x0 kept.

    ``rates`` replaces local_rates(params0, scheme) when given.
    """
    if z.is_zero:
        return params0
    if rates is None:
        rates = local_rates(params0, scheme)
    a_n = params0.a + z.u * rates.phi1
    b_n = params0.b + z.v * rates.phi2
    if a_n < params0.sigma:
        raise AlternativeLeavesParameterSpace(
            f"Local alternative a_n={a_n:.6g} falls below sigma={params0.sigma:g}"
        )
    return params0.with_drift(a_n, b_n)


def validate_scheme(
    params0: CirParams, scheme: SamplingScheme, tol: float = 0.5
) -> list[SchemeWarning]:
    """Advisory checks of one scheme against the asymptotic design conditions.

    The subcritical regime has no rate condition; only the generic step and
    horizon checks apply there.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive (got {tol})")
    warnings: list[SchemeWarning] = []
    n, delta, horizon = scheme.n, scheme.delta, scheme.horizon

    if delta > tol:
        warnings.append(
            SchemeWarning(code="delta_large", message=f"delta={delta:g} exceeds {tol:g}",
                          value=delta)
        )
    if horizon < 1.0 / tol:
        warnings.append(
            SchemeWarning(code="horizon_short",
                          message=f"n*delta={horizon:g} is below {1.0 / tol:g}", value=horizon)
        )

    regime = classify_regime(params0)
    if regime == Regime.CRITICAL:
        ratio = n * delta**1.5 / math.log(horizon) if horizon > 1.0 else math.inf
        if ratio > tol:
            warnings.append(
                SchemeWarning(
                    code="critical_rate",
                    message=f"n*delta^1.5/log(n*delta)={ratio:.4g} exceeds {tol:g}",
                    value=ratio,
                )
            )
    elif regime == Regime.SUPERCRITICAL:
        ratio = n * delta * delta
        if ratio > tol:
            warnings.append(
                SchemeWarning(
                    code="supercritical_rate",
                    message=f"n*delta^2={ratio:.4g} exceeds {tol:g}",
                    value=ratio,
                )
            )

    for warning in warnings:
        logger.warning("Scheme check [%s]: %s", warning.code, warning.message)
    return warnings


def stationary_moments(params: CirParams) -> tuple[float, float, float]:
    """Mean a/b, variance a*sigma/b^2 and E[1/X] = b/(a - sigma) of Gamma(a/sigma, sigma/b)."""
    if classify_regime(params) != Regime.SUBCRITICAL:
        raise WrongRegime("A stationary law exists only for b > 0")
    if params.a == params.sigma:
        raise CirDomainError("E[1/X] is infinite when a == sigma")
    a, b, sigma = params.a, params.b, params.sigma
    return a / b, a * sigma / (b * b), b / (a - sigma)
