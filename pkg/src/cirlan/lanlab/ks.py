"""Kolmogorov-Smirnov distances and the unit-mean statistic."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from cirlan.errors import EmptySample

# Asymptotic 1% critical constant of the KS distribution.
KS_CRITICAL_1PCT = 1.63


def _nonempty(samples: ArrayLike, name: str = "samples") -> np.ndarray:
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptySample(f"{name} is empty")
    return arr


def ks_statistic_one_sample(
    samples: ArrayLike, cdf: Callable[[np.ndarray], np.ndarray]
) -> float:
    """sup |F_m - F| for the empirical CDF of ``samples`` against ``cdf``."""
    arr = _nonempty(samples)
    return float(stats.kstest(arr, cdf).statistic)


def ks_statistic_two_sample(s1: ArrayLike, s2: ArrayLike) -> float:
    """sup |F_1 - F_2| over the merged sample points."""
    a = _nonempty(s1, "s1")
    b = _nonempty(s2, "s2")
    return float(stats.ks_2samp(a, b).statistic)


def ks_threshold_one_sample(m: int) -> float:
    return KS_CRITICAL_1PCT / math.sqrt(m)


def ks_threshold_two_sample(m1: int, m2: int) -> float:
    return KS_CRITICAL_1PCT * math.sqrt((m1 + m2) / (m1 * m2))


def unit_mean_statistic(loglr_samples: ArrayLike) -> tuple[float, float]:
    """Sample mean of exp(samples) and its standard error.

    The exponentials are taken after subtracting the sample maximum and
    rescaled afterwards, so large log-ratios do not overflow early.
    """
    arr = _nonempty(loglr_samples, "loglr_samples")
    shift = float(arr.max())
    weights = np.exp(arr - shift)
    scale = math.exp(shift) if shift < 709.0 else math.inf
    mean = scale * float(weights.mean())
    if arr.size < 2:
        return mean, 0.0
    se = scale * float(weights.std(ddof=1)) / math.sqrt(arr.size)
    return mean, se


def unit_mean_split_statistic(
    null_samples: ArrayLike, alt_samples: ArrayLike
) -> tuple[float, float]:
    """E_0[exp(L)] from bounded pieces, and its standard error.

    E_0[exp(L)] = E_0[exp(L); L <= 0] + P_1(L > 0), with ``null_samples``
    drawn under params0 and ``alt_samples`` the same log-ratio on paths drawn
    under params1. Both summands lie in [0, 1], so the standard error stays
    meaningful when exp(L) itself has no usable second moment.
    """
    null = _nonempty(null_samples, "null_samples")
    alt = _nonempty(alt_samples, "alt_samples")
    lower = np.where(null <= 0.0, np.exp(np.minimum(null, 0.0)), 0.0)
    upper = (alt > 0.0).astype(np.float64)
    mean = float(lower.mean() + upper.mean())
    var = 0.0
    for part in (lower, upper):
        if part.size > 1:
            var += float(part.var(ddof=1)) / part.size
    return mean, math.sqrt(var)
