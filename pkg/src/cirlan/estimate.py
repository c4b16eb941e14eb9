"""Drift estimators from a discretely observed path and the efficiency experiment."""

from __future__ import annotations

import logging
from functools import partial
from typing import Literal

import numpy as np
from scipy import optimize

from cirlan.core import classify_regime
from cirlan.errors import DegenerateDesign, DomainError, WrongRegime
from cirlan.likelihood.density import path_loglik
from cirlan.likelihood.fisher import fisher_info_subcritical
from cirlan.models.params import CirParams, Regime, SamplingScheme
from cirlan.models.paths import Path
from cirlan.models.results import EfficiencyReport, EstimateResult, OptimizerSettings
from cirlan.parallel import ProgressFn, map_indexed
from cirlan.sim.exact import simulate_path
from cirlan.sim.rng import RngStream

logger = logging.getLogger(__name__)

Estimator = Literal["discretized", "exact"]

DETERMINANT_RTOL = 1e-12


def _params_for(path: Path, sigma: float, a: float, b: float) -> CirParams:
    return CirParams(a=a, b=b, sigma=sigma, x0=float(path.values[0]))


def _safe_loglik(path: Path, sigma: float, a: float, b: float) -> float:
    value = path_loglik(_params_for(path, sigma, a, b), path)
    return value if np.isfinite(value) else -np.inf


def mle_discretized(path: Path, sigma: float) -> EstimateResult:
    """Solve the discretized continuous-time score equations for (a, b).

    With S1 = delta * sum 1/x_k, S2 = delta * sum x_k, T = n * delta,
    D1 = sum (x_{k+1} - x_k) / x_k and D2 = x_n - x_0:

        a S1 - b T  = D1
        a T  - b S2 = D2

    An estimate a < sigma is projected onto a = sigma, with b re-solved from
    the second equation, and flagged ``at_boundary``.

    Raises:
        DegenerateDesign: |S1 S2 - T^2| <= 1e-12 S1 S2 (e.g. a constant path).
    """
    if sigma <= 0:
        raise DomainError(f"sigma must be positive (got {sigma})")
    x = path.values[:-1]
    delta = path.delta
    s1 = delta * float(np.sum(1.0 / x))
    s2 = delta * float(np.sum(x))
    t = path.horizon
    d1 = float(np.sum(np.diff(path.values) / x))
    d2 = float(path.values[-1] - path.values[0])

    det = t * t - s1 * s2
    if abs(det) <= DETERMINANT_RTOL * s1 * s2:
        raise DegenerateDesign(
            f"Discretized score system is singular (S1*S2={s1 * s2:.6g}, T^2={t * t:.6g})"
        )
    a_hat = (t * d2 - s2 * d1) / det
    b_hat = (s1 * d2 - t * d1) / det

    at_boundary = a_hat < sigma
    if at_boundary:
        logger.warning("Discretized estimate a=%.6g below sigma; projecting onto a=sigma", a_hat)
        a_hat = sigma
        b_hat = (sigma * t - d2) / s2

    return EstimateResult(
        method="discretized",
        sigma=sigma,
        a_hat=a_hat,
        b_hat=b_hat,
        converged=True,
        iterations=0,
        loglik_at_optimum=_safe_loglik(path, sigma, a_hat, b_hat),
        at_boundary=at_boundary,
    )


def _reflect(theta: np.ndarray, sigma: float) -> tuple[float, float]:
    return sigma + abs(float(theta[0]) - sigma), float(theta[1])


def mle_exact(
    path: Path,
    sigma: float,
    init: tuple[float, float] | None = None,
    opts: OptimizerSettings | None = None,
) -> EstimateResult:
    """Maximize the exact path log-likelihood over {a >= sigma} x R.

    Nelder-Mead on the reflected coordinate a' = sigma + |a - sigma|, stopped
    when the simplex is smaller than ``opts.xtol`` or after ``opts.max_iter``
    iterations. ``init`` defaults to the discretized estimate. The returned
    point is never worse than ``init``.
    """
    opts = opts or OptimizerSettings()
    if init is None:
        start = mle_discretized(path, sigma)
        init = (start.a_hat, start.b_hat)
    a0, b0 = init
    if a0 < sigma:
        raise DomainError(f"init a={a0} is below sigma={sigma}")

    def objective(theta: np.ndarray) -> float:
        a, b = _reflect(theta, sigma)
        return -_safe_loglik(path, sigma, a, b)

    step_a = 0.05 * max(abs(a0), sigma)
    step_b = 0.05 * max(abs(b0), 0.1)
    simplex = np.array([[a0, b0], [a0 + step_a, b0], [a0, b0 + step_b]])
    result = optimize.minimize(
        objective,
        np.array([a0, b0]),
        method="Nelder-Mead",
        options={
            "xatol": opts.xtol,
            "fatol": np.inf,
            "maxiter": opts.max_iter,
            "initial_simplex": simplex,
        },
    )

    converged = bool(result.success)
    if not converged:
        logger.warning("Exact MLE stopped without convergence: %s", result.message)

    a_hat, b_hat = _reflect(result.x, sigma)
    best = -float(result.fun)
    init_loglik = _safe_loglik(path, sigma, a0, b0)
    if init_loglik > best:
        a_hat, b_hat, best = a0, b0, init_loglik

    return EstimateResult(
        method="exact",
        sigma=sigma,
        a_hat=a_hat,
        b_hat=b_hat,
        converged=converged,
        iterations=int(result.nit),
        loglik_at_optimum=best,
        at_boundary=a_hat == sigma,
    )


def estimate_path(path: Path, sigma: float, estimator: Estimator) -> EstimateResult:
    if estimator == "discretized":
        return mle_discretized(path, sigma)
    return mle_exact(path, sigma)


def _estimate_chunk(
    params0: CirParams,
    scheme: SamplingScheme,
    estimator: Estimator,
    rng: RngStream,
    start: int,
    stop: int,
) -> np.ndarray:
    """Rows (a_hat, b_hat, converged) for replications start..stop-1."""
    rows = np.empty((stop - start, 3))
    for row, i in enumerate(range(start, stop)):
        path = simulate_path(params0, scheme, rng.substream(i))
        result = estimate_path(path, params0.sigma, estimator)
        rows[row] = (result.a_hat, result.b_hat, float(result.converged))
    return rows


def efficiency_experiment(
    params0: CirParams,
    scheme: SamplingScheme,
    m: int,
    estimator: Estimator,
    rng: RngStream,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> EfficiencyReport:
    """Covariance of sqrt(n*delta)-scaled estimation errors against I(a0, b0)^{-1}.

    Replication i simulates its path from ``rng.substream(i)``.
    """
    if classify_regime(params0) != Regime.SUBCRITICAL:
        raise WrongRegime("The efficiency experiment needs a subcritical b0 > 0")
    if m < 2:
        raise ValueError(f"m must be >= 2 (got {m})")
    crlb = fisher_info_subcritical(params0).inverse()

    chunk = partial(_estimate_chunk, params0, scheme, estimator, rng)
    rows = map_indexed(chunk, m, workers=workers, progress=progress)

    scale = np.sqrt(scheme.horizon)
    errors = scale * (rows[:, :2] - np.array([params0.a, params0.b]))
    mean_error = errors.mean(axis=0)
    cov = np.cov(errors, rowvar=False)
    cov_ab = float(cov[0, 1])
    rel_dev = np.abs(cov - crlb) / np.abs(crlb)
    non_converged = int(m - rows[:, 2].sum())
    if non_converged:
        logger.warning("%d of %d replications did not converge", non_converged, m)

    return EfficiencyReport(
        m=m,
        estimator=estimator,
        mean_error=(float(mean_error[0]), float(mean_error[1])),
        sample_cov_scaled=((float(cov[0, 0]), cov_ab), (cov_ab, float(cov[1, 1]))),
        crlb=((float(crlb[0, 0]), float(crlb[0, 1])), (float(crlb[1, 0]), float(crlb[1, 1]))),
        max_rel_dev=float(rel_dev.max()),
        non_converged=non_converged,
    )
