"""Exact CIR transitions through the Poisson-mixed Gamma law."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cirlan.models.params import CirParams, SamplingScheme
from cirlan.models.paths import Path
from cirlan.sim.rng import RngLike, as_generator

# Below this |b * dt| the b = 0 scale sigma * dt is used.
NEAR_CRITICAL_BDT = 1e-10


@dataclass(frozen=True)
class TransitionConstants:
    """Scale c, decay exp(-b dt) and Gamma shape a/sigma of one transition."""

    c: float
    decay: float
    shape: float

    def noncentrality(self, x: float | np.ndarray) -> float | np.ndarray:
        """lambda(x) = 2 x exp(-b dt) / c."""
        return 2.0 * x * self.decay / self.c

    def mean(self, x: float) -> float:
        return x * self.decay + self.c * self.shape

    def variance(self, x: float) -> float:
        return self.c * self.c * (self.shape + self.noncentrality(x))


def transition_constants(params: CirParams, dt: float) -> TransitionConstants:
    """c = sigma (1 - e^{-b dt}) / b, or sigma dt when b = 0; c > 0 in every regime."""
    if dt <= 0:
        raise ValueError(f"dt must be positive (got {dt})")
    bdt = params.b * dt
    if abs(bdt) < NEAR_CRITICAL_BDT:
        c = params.sigma * dt
    else:
        c = -params.sigma * math.expm1(-bdt) / params.b
    return TransitionConstants(c=c, decay=math.exp(-bdt), shape=params.shape)


def _draw(
    gen: np.random.Generator, consts: TransitionConstants, x: float | np.ndarray,
    size: int | None = None,
) -> float | np.ndarray:
    k = gen.poisson(consts.noncentrality(x) / 2.0, size=size)
    return gen.gamma(consts.shape + k, consts.c, size=size)


def exact_transition_sample(
    params: CirParams, x: float, dt: float, rng: RngLike, size: int | None = None
) -> float | np.ndarray:
    """Draw X_{t+dt} given X_t = x: K ~ Poisson(lambda/2), then Gamma(a/sigma + K, c).

    x = 0 is allowed (R-process from the origin). With ``size`` the result is
    an array of independent draws from the same starting point.
    """
    if x < 0:
        raise ValueError(f"x must be >= 0 (got {x})")
    gen = as_generator(rng)
    value = _draw(gen, transition_constants(params, dt), x, size)
    return value if size is not None else float(value)


def simulate_skeleton(
    params: CirParams, x0: float, dt: float, steps: int, gen: np.random.Generator
) -> np.ndarray:
    """steps + 1 exact grid values from x0 using one generator."""
    consts = transition_constants(params, dt)
    values = np.empty(steps + 1)
    values[0] = x = x0
    for k in range(1, steps + 1):
        x = float(_draw(gen, consts, x))
        values[k] = x
    return values


def simulate_path(params: CirParams, scheme: SamplingScheme, rng: RngLike) -> Path:
    """Markov chain of exact transitions from x0 on the scheme's grid."""
    gen = as_generator(rng)
    values = simulate_skeleton(params, params.x0, scheme.delta, scheme.n, gen)
    return Path(delta=scheme.delta, values=values)
