"""Monte Carlo checks of the log-likelihood ratio against its limit law.

Empirical log-ratios come from exact paths simulated under params0, one
substream per path index. Limit draws use a disjoint block of substreams,
so the two samples fed to the two-sample KS statistic are independent.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import stats

from cirlan.core import (
    check_condition_a,
    classify_regime,
    local_alternative_params,
    validate_scheme,
)
from cirlan.errors import InsufficientSamples, WrongRegime
from cirlan.lanlab.ks import (
    ks_statistic_one_sample,
    ks_statistic_two_sample,
    ks_threshold_one_sample,
    ks_threshold_two_sample,
    unit_mean_split_statistic,
    unit_mean_statistic,
)
from cirlan.likelihood.density import loglr
from cirlan.likelihood.fisher import critical_info_deterministic, fisher_info_subcritical
from cirlan.models.params import CirParams, LocalAlternative, RatePair, Regime, SamplingScheme
from cirlan.models.paths import SubcriticalLimitDraw
from cirlan.models.results import LimitLawSpec, TrendReport, VerificationReport
from cirlan.parallel import ProgressFn, map_indexed
from cirlan.sim.exact import simulate_path
from cirlan.sim.limits import (
    DEFAULT_SUBSTEPS,
    LimitDraw,
    sample_limit_loglr,
    simulate_critical_limit,
    simulate_supercritical_limit,
)
from cirlan.sim.rng import RngStream

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100
MEAN_TOL_SE = 3.0
VAR_REL_TOL = 0.15
UNIT_MEAN_TOL_SE = 4.0
# Above this log-ratio variance the unit mean is estimated from bounded pieces,
# with extra paths simulated under the alternative.
UNIT_MEAN_MAX_VAR = 8.0
# The critical a-direction converges at sqrt(log(n*delta)).
CRITICAL_U_KS_RELAX = 2.0


def limit_law_spec(params0: CirParams, z: LocalAlternative) -> LimitLawSpec:
    return LimitLawSpec.for_regime(classify_regime(params0), params0, z)


def _loglr_chunk(
    params0: CirParams,
    params1: CirParams,
    scheme: SamplingScheme,
    rng: RngStream,
    under_alternative: bool,
    near_critical: bool,
    start: int,
    stop: int,
) -> np.ndarray:
    out = np.empty(stop - start)
    for row, i in enumerate(range(start, stop)):
        if under_alternative:
            path = simulate_path(params1, scheme, rng.alternative_substream(i))
        else:
            path = simulate_path(params0, scheme, rng.substream(i))
        out[row] = loglr(params0, params1, path, near_critical)
    return out


def sample_loglr_empirical(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    progress: ProgressFn | None = None,
    near_critical: bool = False,
) -> np.ndarray:
    """m draws of loglr(params0, params_n, path_i), path i simulated from rng.substream(i).

    ``near_critical`` forces the b = 0 density in every log-ratio.
    """
    params1 = local_alternative_params(params0, scheme, z, rates)
    if params1 == params0:
        if progress is not None:
            progress(m)
        return np.zeros(m)
    chunk = partial(_loglr_chunk, params0, params1, scheme, rng, False, near_critical)
    return map_indexed(chunk, m, workers=workers, progress=progress)


def sample_loglr_alternative(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    near_critical: bool = False,
) -> np.ndarray:
    """m log-ratios on paths simulated under params_n, path i from rng.alternative_substream(i)."""
    params1 = local_alternative_params(params0, scheme, z, rates)
    if params1 == params0:
        return np.zeros(m)
    chunk = partial(_loglr_chunk, params0, params1, scheme, rng, True, near_critical)
    return map_indexed(chunk, m, workers=workers)


def _draw_limit(
    params0: CirParams, regime: Regime, substeps: int, stream: RngStream
) -> LimitDraw:
    if regime == Regime.CRITICAL:
        return simulate_critical_limit(params0, substeps, stream)
    if regime == Regime.SUPERCRITICAL:
        return simulate_supercritical_limit(params0, substeps, stream)
    return SubcriticalLimitDraw(g=float(stream.generator().standard_normal()))


def _limit_chunk(
    params0: CirParams,
    z: LocalAlternative,
    substeps: int,
    rng: RngStream,
    start: int,
    stop: int,
) -> np.ndarray:
    regime = classify_regime(params0)
    out = np.empty(stop - start)
    for row, j in enumerate(range(start, stop)):
        draw = _draw_limit(params0, regime, substeps, rng.limit_substream(j))
        out[row] = sample_limit_loglr(params0, z, draw)
    return out


def sample_limit_draws(
    params0: CirParams,
    z: LocalAlternative,
    m_limit: int,
    rng: RngStream,
    substeps: int = DEFAULT_SUBSTEPS,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> np.ndarray:
    """m_limit values of the limit log-ratio, draw j from rng.limit_substream(j)."""
    if z.is_zero:
        if progress is not None:
            progress(m_limit)
        return np.zeros(m_limit)
    chunk = partial(_limit_chunk, params0, z, substeps, rng)
    return map_indexed(chunk, m_limit, workers=workers, progress=progress)


def _require(params0: CirParams, regime: Regime, m: int) -> None:
    actual = classify_regime(params0)
    if actual != regime:
        raise WrongRegime(f"Check needs the {regime} regime (params are {actual})")
    if m < MIN_SAMPLES:
        raise InsufficientSamples(f"Need at least {MIN_SAMPLES} samples (got {m})")


def _advisories(params0: CirParams, scheme: SamplingScheme, z: LocalAlternative) -> list[str]:
    notes = []
    if not check_condition_a(params0):
        logger.warning("Condition (A) fails: a/sigma = %.4g", params0.a / params0.sigma)
        notes.append("condition_a")
    rate_codes = {"critical_rate", "supercritical_rate"}
    for warning in validate_scheme(params0, scheme):
        if warning.code in rate_codes and z.u == 0.0:
            continue
        notes.append(warning.code)
    return notes


def _moments(samples: np.ndarray) -> tuple[float, float, float, float]:
    """(mean, se of mean, variance, se of variance)."""
    m = samples.size
    mean = float(samples.mean())
    centered = samples - mean
    var = float(centered.var(ddof=1))
    m4 = float(np.mean(centered**4))
    var_se = math.sqrt(max(m4 - var * var, 0.0) / m)
    return mean, math.sqrt(var / m), var, var_se


def _unit_mean(
    samples: np.ndarray,
    emp_var: float,
    notes: list[str],
    draw_alternative: Callable[[], np.ndarray],
) -> tuple[float, float]:
    if emp_var <= UNIT_MEAN_MAX_VAR:
        return unit_mean_statistic(samples)
    logger.info(
        "Log-ratio variance %.3g: unit mean from %d paths under the alternative",
        emp_var, samples.size,
    )
    notes.append("unit_mean_split")
    return unit_mean_split_statistic(samples, draw_alternative())


@dataclass(frozen=True)
class CheckOutcome:
    """A verification report with the raw samples it was computed from."""

    report: VerificationReport
    samples: np.ndarray
    limit_samples: np.ndarray | None = None


def _build_outcome(
    spec: LimitLawSpec,
    samples: np.ndarray,
    ks_stat: float,
    ks_threshold: float,
    notes: list[str],
    draw_alternative: Callable[[], np.ndarray],
    *,
    limit_samples: np.ndarray | None = None,
    theo_mean: float | None = None,
    theo_var: float | None = None,
    gate_moments: bool = False,
) -> CheckOutcome:
    emp_mean, emp_mean_se, emp_var, emp_var_se = _moments(samples)
    unit_mean, unit_mean_se = _unit_mean(samples, emp_var, notes, draw_alternative)
    lim_mean = lim_var = None
    if limit_samples is not None:
        lim_mean = float(limit_samples.mean())
        lim_var = float(limit_samples.var(ddof=1))
    report = VerificationReport(
        regime=spec.regime,
        kind=spec.kind,
        u=spec.z.u,
        v=spec.z.v,
        m=samples.size,
        m_limit=None if limit_samples is None else limit_samples.size,
        emp_mean=emp_mean,
        emp_mean_se=emp_mean_se,
        emp_var=emp_var,
        emp_var_se=emp_var_se,
        theo_mean=theo_mean,
        theo_var=theo_var,
        lim_mean=lim_mean,
        lim_var=lim_var,
        ks_stat=ks_stat,
        ks_threshold=ks_threshold,
        unit_mean=unit_mean,
        unit_mean_se=unit_mean_se,
        mean_tol_se=MEAN_TOL_SE if gate_moments else None,
        var_rel_tol=VAR_REL_TOL if gate_moments else None,
        unit_mean_tol_se=UNIT_MEAN_TOL_SE,
        warnings=tuple(notes),
    )
    logger.info(
        "%s check z=(%g, %g): ks=%.4g (threshold %.4g), pass=%s",
        spec.regime, spec.z.u, spec.z.v, ks_stat, ks_threshold, report.passed,
    )
    return CheckOutcome(report=report, samples=samples, limit_samples=limit_samples)


def _subcritical_outcome(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    rng: RngStream,
    rates: RatePair | None,
    workers: int,
    progress: ProgressFn | None,
    near_critical: bool = False,
) -> CheckOutcome:
    _require(params0, Regime.SUBCRITICAL, m)
    notes = _advisories(params0, scheme, z)
    spec = limit_law_spec(params0, z)
    q = fisher_info_subcritical(params0).quadratic(z)
    theo_mean, theo_var = -0.5 * q, q

    samples = sample_loglr_empirical(
        params0, scheme, z, m, rng, rates=rates, workers=workers, progress=progress,
        near_critical=near_critical,
    )
    if z.is_zero:
        ks = 0.0
    else:
        limit = stats.norm(loc=theo_mean, scale=math.sqrt(theo_var))
        ks = ks_statistic_one_sample(samples, limit.cdf)
    alternative = partial(
        sample_loglr_alternative, params0, scheme, z, m, rng, rates, workers, near_critical
    )
    return _build_outcome(
        spec, samples, ks, ks_threshold_one_sample(m), notes, alternative,
        theo_mean=theo_mean, theo_var=theo_var, gate_moments=True,
    )


def _simulated_outcome(
    regime: Regime,
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    m_limit: int,
    substeps: int,
    rng: RngStream,
    rates: RatePair | None,
    workers: int,
    progress: ProgressFn | None,
    near_critical: bool = False,
) -> CheckOutcome:
    _require(params0, regime, m)
    if m_limit < MIN_SAMPLES:
        raise InsufficientSamples(f"Need at least {MIN_SAMPLES} limit draws (got {m_limit})")
    notes = _advisories(params0, scheme, z)
    spec = limit_law_spec(params0, z)

    samples = sample_loglr_empirical(
        params0, scheme, z, m, rng, rates=rates, workers=workers, progress=progress,
        near_critical=near_critical,
    )
    limit_samples = sample_limit_draws(params0, z, m_limit, rng, substeps, workers=workers)
    ks = ks_statistic_two_sample(samples, limit_samples)
    relax = CRITICAL_U_KS_RELAX if regime == Regime.CRITICAL and z.u != 0.0 else 1.0
    threshold = relax * ks_threshold_two_sample(m, m_limit)
    alternative = partial(
        sample_loglr_alternative, params0, scheme, z, m, rng, rates, workers, near_critical
    )
    return _build_outcome(
        spec, samples, ks, threshold, notes, alternative, limit_samples=limit_samples
    )


def lan_check_subcritical(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> VerificationReport:
    """Empirical log-ratios against N(-z'Iz/2, z'Iz) with the deterministic I(a0, b0).

    Passes when the mean is within 3 standard errors, the variance within
    15%, and the one-sample KS distance below 1.63/sqrt(m).
    """
    return _subcritical_outcome(params0, scheme, z, m, rng, rates, workers, progress).report


def laq_check_critical(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    m_limit: int,
    substeps: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> VerificationReport:
    """Two-sample KS against simulated critical limit draws plus the unit-mean identity.

    The KS threshold is doubled when u != 0.
    """
    return _simulated_outcome(
        Regime.CRITICAL, params0, scheme, z, m, m_limit, substeps, rng, rates, workers, progress
    ).report


def lamn_check_supercritical(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    m_limit: int,
    substeps: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> VerificationReport:
    """Two-sample KS against simulated supercritical limit draws plus the unit-mean identity.

    Empirical and limit draws are unpaired, so only equality in law is checked,
    not the conditional Gaussian structure of the v-only mixed normal limit.
    """
    return _simulated_outcome(
        Regime.SUPERCRITICAL, params0, scheme, z, m, m_limit, substeps, rng,
        rates, workers, progress,
    ).report


def run_lan_check(
    params0: CirParams,
    scheme: SamplingScheme,
    z: LocalAlternative,
    m: int,
    m_limit: int,
    substeps: int,
    rng: RngStream,
    rates: RatePair | None = None,
    workers: int = 1,
    progress: ProgressFn | None = None,
    near_critical: bool = False,
) -> CheckOutcome:
    """Dispatch on the regime of params0 and keep the raw samples."""
    regime = classify_regime(params0)
    if near_critical and params0.b != 0.0:
        logger.warning("Forcing the b = 0 density with b0 = %g", params0.b)
    if regime == Regime.SUBCRITICAL:
        return _subcritical_outcome(
            params0, scheme, z, m, rng, rates, workers, progress, near_critical
        )
    return _simulated_outcome(
        regime, params0, scheme, z, m, m_limit, substeps, rng, rates, workers, progress,
        near_critical,
    )


def laq_trend_critical(
    params0: CirParams,
    horizons: tuple[float, ...],
    delta: float,
    u: float,
    m: int,
    rng: RngStream,
    workers: int = 1,
) -> TrendReport:
    """KS distance to N(-u^2 I/2, u^2 I), I = 1/(2 sigma (a0 - sigma)), per horizon.

    Horizon k uses rng.substream(k) as its base stream.
    """
    _require(params0, Regime.CRITICAL, m)
    if u == 0.0:
        raise ValueError("Trend report needs u != 0")
    info = critical_info_deterministic(params0)
    theo_mean, theo_var = -0.5 * u * u * info, u * u * info
    limit = stats.norm(loc=theo_mean, scale=math.sqrt(theo_var))
    z = LocalAlternative(u=u, v=0.0)

    ks_stats = []
    for k, horizon in enumerate(horizons):
        scheme = SamplingScheme(n=int(round(horizon / delta)), delta=delta)
        samples = sample_loglr_empirical(params0, scheme, z, m, rng.substream(k), workers=workers)
        ks_stats.append(ks_statistic_one_sample(samples, limit.cdf))
        logger.info("Critical trend at n*delta=%g: ks=%.4g", scheme.horizon, ks_stats[-1])

    return TrendReport(
        u=u,
        horizons=tuple(float(h) for h in horizons),
        ks_stats=tuple(ks_stats),
        theo_mean=theo_mean,
        theo_var=theo_var,
        slack=1.0 / math.sqrt(m),
    )
