"""Log transition density, path log-likelihood and log-likelihood ratios.

Given X_t = x, X_{t+dt} / c is non-central chi-squared, so with
d = exp(-b dt), z = 2 sqrt(x y d) / c and nu = a/sigma - 1,

    log p = -log c - (sqrt(y) - sqrt(x d))^2 / c + (nu/2) log(y / (x d))
            + log I_nu(z) - z.

Every factor stays in log space; the Gaussian-like middle term replaces the
separate exp(-(x d + y)/c) and exp(z) factors, which overflow for small dt.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from cirlan.errors import DomainError, SigmaMismatch
from cirlan.models.params import CirParams
from cirlan.models.paths import Path
from cirlan.sim.exact import TransitionConstants, transition_constants
from cirlan.specfun import log_bessel_ie


def effective_constants(
    params: CirParams, dt: float, near_critical: bool = False
) -> TransitionConstants:
    """Transition constants, or the b = 0 ones when ``near_critical`` is set."""
    if near_critical:
        return TransitionConstants(c=params.sigma * dt, decay=1.0, shape=params.shape)
    return transition_constants(params, dt)


def log_transition_density(
    params: CirParams,
    dt: float,
    x: ArrayLike,
    y: ArrayLike,
    near_critical: bool = False,
) -> np.ndarray | float:
    """log p(dt, x, y), broadcasting over x and y.

    ``near_critical`` forces the b = 0 form regardless of b.

    Raises:
        DomainError: dt, or any x or y, not strictly positive.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive (got {dt})")
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if not (np.all(xa > 0) and np.all(ya > 0)):
        raise DomainError("Transition density needs x > 0 and y > 0")

    consts = effective_constants(params, dt, near_critical)
    c = consts.c
    xd = xa * consts.decay
    arg = 2.0 * np.sqrt(xd * ya) / c
    nu = params.nu
    diff = np.sqrt(ya) - np.sqrt(xd)
    result = (
        -np.log(c)
        - diff * diff / c
        + 0.5 * nu * (np.log(ya) - np.log(xd))
        + log_bessel_ie(nu, arg)
    )
    if np.ndim(result) == 0:
        return float(result)
    return result


def path_loglik(params: CirParams, path: Path) -> float:
    """Sum of log transition densities along the path."""
    values = path.values
    return float(np.sum(log_transition_density(params, path.delta, values[:-1], values[1:])))


def _check_sigma(params0: CirParams, params1: CirParams) -> None:
    if params0.sigma != params1.sigma:
        raise SigmaMismatch(
            f"Likelihood ratio needs a shared sigma (got {params0.sigma} and {params1.sigma})"
        )


def loglr(
    params0: CirParams, params1: CirParams, path: Path, near_critical: bool = False
) -> float:
    """path_loglik(params1) - path_loglik(params0), summed step by step.

    ``near_critical`` evaluates both densities in the b = 0 form.

    Raises:
        SigmaMismatch: the two parameter sets disagree on sigma.
    """
    _check_sigma(params0, params1)
    if params0 == params1:
        return 0.0
    values = path.values
    x, y = values[:-1], values[1:]
    steps = log_transition_density(
        params1, path.delta, x, y, near_critical
    ) - log_transition_density(params0, path.delta, x, y, near_critical)
    return float(np.sum(steps))


def loglr_girsanov(params0: CirParams, params1: CirParams, path: Path) -> float:
    """Discretized continuous-observation log-likelihood ratio.

    Left-point sums of (mu1 - mu0) / (2 sigma x) dX - (mu1^2 - mu0^2) / (4 sigma x) dt
    with mu_i = a_i - b_i x.
    """
    _check_sigma(params0, params1)
    x = path.values[:-1]
    dx = np.diff(path.values)
    mu0 = params0.a - params0.b * x
    mu1 = params1.a - params1.b * x
    denom = 2.0 * params0.sigma * x
    steps = (mu1 - mu0) / denom * dx - 0.5 * (mu1 * mu1 - mu0 * mu0) / denom * path.delta
    return float(np.sum(steps))
