"""Draws from the critical and supercritical limit laws of the log-likelihood ratio.

Both limits are functionals of an R-process: a CIR process with drift a and
no mean reversion, started at 0 (critical) or at x0 (supercritical).
"""

from __future__ import annotations

import math

from scipy.integrate import trapezoid

from cirlan.core import classify_regime
from cirlan.errors import DomainError, MissingDraw, WrongRegime
from cirlan.likelihood.fisher import critical_info_deterministic, fisher_info_subcritical
from cirlan.models.params import CirParams, LocalAlternative, Regime
from cirlan.models.paths import CriticalLimitDraw, SubcriticalLimitDraw, SupercriticalLimitDraw
from cirlan.sim.exact import simulate_skeleton
from cirlan.sim.rng import RngLike, as_generator

DEFAULT_SUBSTEPS = 256

LimitDraw = SubcriticalLimitDraw | CriticalLimitDraw | SupercriticalLimitDraw


def _r_process(params0: CirParams) -> CirParams:
    return params0.with_drift(params0.a, 0.0)


def simulate_critical_limit(
    params0: CirParams, substeps: int, rng: RngLike
) -> CriticalLimitDraw:
    """(R_1, int_0^1 R ds) for R started at 0, plus an independent normal g.

    The integral is the trapezoid rule on ``substeps`` exact transitions.
    """
    if substeps < 2:
        raise ValueError(f"substeps must be >= 2 (got {substeps})")
    gen = as_generator(rng)
    values = simulate_skeleton(_r_process(params0), 0.0, 1.0 / substeps, substeps, gen)
    int_r = float(trapezoid(values, dx=1.0 / substeps))
    return CriticalLimitDraw(r1=float(values[-1]), int_r=int_r, g=float(gen.standard_normal()))


def simulate_supercritical_limit(
    params0: CirParams, substeps: int, rng: RngLike
) -> SupercriticalLimitDraw:
    """R from x0 on [0, -1/b0]: endpoint, trapezoid integral, V and an independent normal z1."""
    if classify_regime(params0) != Regime.SUPERCRITICAL:
        raise WrongRegime(f"Supercritical limit needs b0 < 0 (got b0={params0.b})")
    if substeps < 2:
        raise ValueError(f"substeps must be >= 2 (got {substeps})")
    gen = as_generator(rng)
    horizon = -1.0 / params0.b
    dt = horizon / substeps
    values = simulate_skeleton(_r_process(params0), params0.x0, dt, substeps, gen)
    r_end = float(values[-1])
    int_r = float(trapezoid(values, dx=dt))
    v_stat = math.log(r_end) - math.log(params0.x0) - (params0.a - params0.sigma) * int_r
    return SupercriticalLimitDraw(
        r_end=r_end, int_r=int_r, v_stat=v_stat, z1=float(gen.standard_normal())
    )


def sample_limit_loglr(
    params0: CirParams,
    z: LocalAlternative,
    draw: LimitDraw | None = None,
    rng: RngLike | None = None,
) -> float:
    """One value of z'U - z'Iz/2 in the regime of params0.

    The subcritical Gaussian limit takes a SubcriticalLimitDraw or an rng.
    The critical and supercritical limits need their own draw type.
    """
    if z.is_zero:
        return 0.0
    regime = classify_regime(params0)
    u, v = z.u, z.v
    sigma = params0.sigma

    if regime == Regime.SUBCRITICAL:
        if isinstance(draw, SubcriticalLimitDraw):
            g = draw.g
        elif draw is None and rng is not None:
            g = float(as_generator(rng).standard_normal())
        else:
            raise MissingDraw("Subcritical limit needs a SubcriticalLimitDraw or an rng")
        q = fisher_info_subcritical(params0).quadratic(z)
        return math.sqrt(q) * g - 0.5 * q

    if regime == Regime.CRITICAL:
        if not isinstance(draw, CriticalLimitDraw):
            raise MissingDraw("Critical limit needs a CriticalLimitDraw")
        a_term = 0.0
        if u != 0.0:
            info_a = critical_info_deterministic(params0)
            if not math.isfinite(info_a):
                raise DomainError("Critical a-information is infinite at a = sigma")
            a_term = u * draw.g * math.sqrt(info_a) - 0.5 * u * u * info_a
        b_term = (v * (params0.a - draw.r1) - 0.5 * v * v * draw.int_r) / (2.0 * sigma)
        return a_term + b_term

    if not isinstance(draw, SupercriticalLimitDraw):
        raise MissingDraw("Supercritical limit needs a SupercriticalLimitDraw")
    info_b = -draw.r_end / params0.b
    return (
        u * draw.v_stat / (2.0 * sigma)
        + v * math.sqrt(info_b) * draw.z1 / math.sqrt(2.0 * sigma)
        - 0.5 * (u * u * draw.int_r / (2.0 * sigma) + v * v * info_b / (2.0 * sigma))
    )
