"""Symmetrized Euler scheme, used only as a cross-check of the exact sampler."""

from __future__ import annotations

import logging
import math

import numpy as np

from cirlan.models.params import CirParams, SamplingScheme
from cirlan.models.paths import Path
from cirlan.sim.rng import RngLike, as_generator

logger = logging.getLogger(__name__)

SMALLEST_POSITIVE = float(np.nextafter(0.0, 1.0))


def simulate_path_euler_symmetrized(
    params: CirParams, scheme: SamplingScheme, substeps: int, rng: RngLike
) -> Path:
    """x <- |x + (a - b x) h + sqrt(2 sigma x) sqrt(h) xi| with h = delta / substeps.

    Only every ``substeps``-th value is recorded. Recorded zeros are replaced
    by the smallest positive double so the path stays in the density's domain.
    """
    if substeps < 1:
        raise ValueError(f"substeps must be >= 1 (got {substeps})")
    gen = as_generator(rng)
    a, b, sigma = params.a, params.b, params.sigma
    h = scheme.delta / substeps
    sqrt_h = math.sqrt(h)

    values = np.empty(scheme.n + 1)
    values[0] = x = params.x0
    repaired = 0
    for k in range(1, scheme.n + 1):
        for xi in gen.standard_normal(substeps):
            x = abs(x + (a - b * x) * h + math.sqrt(2.0 * sigma * max(x, 0.0)) * sqrt_h * xi)
        if x == 0.0:
            repaired += 1
            values[k] = SMALLEST_POSITIVE
        else:
            values[k] = x

    if repaired:
        logger.warning("Euler path: repaired %d zero values", repaired)
    return Path(delta=scheme.delta, values=values)
