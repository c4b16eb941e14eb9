"""Subcommand implementations. Each takes its validated config section."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from contextlib import contextmanager

import numpy as np
import pandas as pd
from pydantic import ValidationError
from scipy import integrate

from cirlan.cli.display import show_report_table, show_success
from cirlan.cli.progress import replication_progress
from cirlan.cli.series import read_series, write_frame, write_report, write_series
from cirlan.config import (
    DensityConfig,
    ErgodicConfig,
    EstimateConfig,
    LanConfig,
    ModelSection,
    SimulateConfig,
    resolve_seed,
)
from cirlan.core import classify_regime, local_rates
from cirlan.errors import CirDomainError, ConfigError, VerificationFailed
from cirlan.estimate import mle_discretized, mle_exact
from cirlan.lanlab.checks import CheckOutcome, run_lan_check
from cirlan.lanlab.ergodic import ergodic_check
from cirlan.likelihood.density import effective_constants, log_transition_density
from cirlan.models.params import CirParams, LocalAlternative, RatePair, SamplingScheme
from cirlan.models.results import OptimizerSettings
from cirlan.sim.euler import simulate_path_euler_symmetrized
from cirlan.sim.exact import simulate_path
from cirlan.sim.rng import RngStream

logger = logging.getLogger(__name__)

# Half-width of the default density grid, in conditional standard deviations.
DENSITY_GRID_SDS = 12.0


@contextmanager
def domain_errors() -> Iterator[None]:
    """Re-raise model validation failures as domain errors (exit 3)."""
    try:
        yield
    except ValidationError as exc:
        raise CirDomainError(str(exc)) from exc


def _params(section: ModelSection) -> CirParams:
    return CirParams(a=section.a, b=section.b, sigma=section.sigma, x0=section.x0)


def cmd_simulate(config: SimulateConfig, as_json: bool = False) -> None:
    with domain_errors():
        params = _params(config)
        scheme = SamplingScheme(n=config.n, delta=config.delta)
    rng = RngStream(seed=resolve_seed(config.seed))

    if config.method == "euler":
        path = simulate_path_euler_symmetrized(params, scheme, config.substeps, rng)
    else:
        path = simulate_path(params, scheme, rng)
    write_series(path, config.out)
    if config.out:
        show_success(f"Wrote {scheme.n + 1} observations to {config.out}")


def density_grid(config: DensityConfig, params: CirParams) -> np.ndarray:
    """Explicit [y_min, y_max], else mean +- 12 sd of the transition law, kept positive."""
    consts = effective_constants(params, config.dt, config.near_critical)
    mean = consts.mean(config.x)
    sd = math.sqrt(consts.variance(config.x))
    lo = config.y_min if config.y_min is not None else mean - DENSITY_GRID_SDS * sd
    hi = config.y_max if config.y_max is not None else mean + DENSITY_GRID_SDS * sd
    if config.y_min is None:
        lo = max(lo, 1e-6 * sd)
    if not 0.0 < lo < hi:
        raise CirDomainError(f"Density grid needs 0 < y_min < y_max (got {lo}, {hi})")
    return np.linspace(lo, hi, config.points)


def cmd_density(config: DensityConfig, as_json: bool = False) -> None:
    with domain_errors():
        params = _params(config)
    grid = density_grid(config, params)
    log_p = log_transition_density(params, config.dt, config.x, grid, config.near_critical)
    frame = pd.DataFrame({"y": grid, "log_p": log_p, "p": np.exp(log_p)})
    write_frame(frame, config.out)
    logger.info("Density mass on grid: %.10f", float(integrate.trapezoid(frame["p"], grid)))


def cmd_estimate(config: EstimateConfig, as_json: bool = False) -> None:
    if not config.input:
        raise ConfigError("estimate needs an input series (--input)")
    path = read_series(config.input)

    with domain_errors():
        discretized = mle_discretized(path, config.sigma)
        record = discretized.to_record("discretized_")
        if config.exact:
            opts = OptimizerSettings(xtol=config.xtol, max_iter=config.max_iter)
            exact = mle_exact(
                path, config.sigma, init=(discretized.a_hat, discretized.b_hat), opts=opts
            )
            record.update(exact.to_record("exact_"))
            record["agree_a"] = abs(exact.a_hat - discretized.a_hat)
            record["agree_b"] = abs(exact.b_hat - discretized.b_hat)

    show_report_table("Estimate", record)
    write_report(record, config.out, as_json)


def _rates(config: LanConfig, params0: CirParams, scheme: SamplingScheme) -> RatePair | None:
    """Explicit rates from the config; a missing one is filled from the regime's rate."""
    if config.phi1 is None and config.phi2 is None:
        return None
    default = local_rates(params0, scheme)
    return RatePair(
        phi1=config.phi1 if config.phi1 is not None else default.phi1,
        phi2=config.phi2 if config.phi2 is not None else default.phi2,
    )


def _dump_samples(outcome: CheckOutcome, out: str) -> None:
    frames = [pd.DataFrame({"source": "empirical", "loglr": outcome.samples})]
    if outcome.limit_samples is not None:
        frames.append(pd.DataFrame({"source": "limit", "loglr": outcome.limit_samples}))
    write_frame(pd.concat(frames, ignore_index=True), out)


def cmd_lan(config: LanConfig, as_json: bool = False) -> None:
    with domain_errors():
        params0 = _params(config)
        scheme = SamplingScheme(n=config.n, delta=config.delta)
        z = LocalAlternative(u=config.u, v=config.v)
        rates = _rates(config, params0, scheme)
    rng = RngStream(seed=resolve_seed(config.seed))
    regime = classify_regime(params0)

    with replication_progress(f"{regime} log-LR paths", config.m) as progress:
        outcome = run_lan_check(
            params0,
            scheme,
            z,
            m=config.m,
            m_limit=config.m_limit,
            substeps=config.substeps,
            rng=rng,
            rates=rates,
            workers=config.workers,
            progress=progress,
            near_critical=config.near_critical,
        )

    if config.dump:
        _dump_samples(outcome, config.dump)
    record = outcome.report.to_record()
    show_report_table(f"Local alternative check ({regime})", record)
    write_report(record, config.out, as_json)
    if not outcome.report.passed:
        raise VerificationFailed(f"{regime} check failed for z=({z.u}, {z.v})")


def cmd_ergodic(config: ErgodicConfig, as_json: bool = False) -> None:
    with domain_errors():
        params = _params(config)
        report = ergodic_check(
            params,
            config.horizon,
            config.delta,
            RngStream(seed=resolve_seed(config.seed)),
            tail_fraction=config.tail_fraction,
        )
    record = report.to_record()
    show_report_table("Ergodic averages", record)
    write_report(record, config.out, as_json)
    if not report.passed:
        raise VerificationFailed(f"Ergodic averages off target over T={report.horizon}")


COMMANDS = {
    "simulate": cmd_simulate,
    "density": cmd_density,
    "estimate": cmd_estimate,
    "lan": cmd_lan,
    "ergodic": cmd_ergodic,
}
