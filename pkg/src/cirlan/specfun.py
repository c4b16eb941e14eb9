"""Log-scale modified Bessel function I_nu and log-gamma.

Only log values are exposed: the Bessel argument in the transition density
grows like 1/delta and I_nu overflows long before the density does.
"""

from __future__ import annotations

from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from cirlan.errors import DomainError

SERIES_MAX_ARG = 30.0
SERIES_TERMS = 40
# Beyond this argument the Hankel expansion is used whenever nu^2 <= x.
HANKEL_MIN_ARG = 1e4
HANKEL_TERMS = 30
# From this order on, the Debye expansion replaces the long series for 30 < x <= nu.
DEBYE_MIN_ORDER = 1000.0

_LOG_2PI = float(np.log(2.0 * np.pi))


class BesselRegime(StrEnum):
    SERIES_SMALL_ARG = "series_small_arg"
    SCALED_LIBRARY = "scaled_library"
    ASYMPTOTIC_LARGE_ARG = "asymptotic_large_arg"
    UNIFORM_LARGE_ORDER = "uniform_large_order"


def _classify(nu: float, x: np.ndarray) -> np.ndarray:
    """Regime tag per element of x (x > 0)."""
    tags = np.full(x.shape, BesselRegime.SCALED_LIBRARY.value, dtype=object)
    huge = x >= HANKEL_MIN_ARG
    tags[huge & (nu * nu <= x)] = BesselRegime.ASYMPTOTIC_LARGE_ARG.value
    tags[huge & (nu * nu > x)] = BesselRegime.UNIFORM_LARGE_ORDER.value
    tags[x <= max(SERIES_MAX_ARG, nu)] = BesselRegime.SERIES_SMALL_ARG.value
    if nu >= DEBYE_MIN_ORDER:
        tags[(x > SERIES_MAX_ARG) & (x <= nu)] = BesselRegime.UNIFORM_LARGE_ORDER.value
    return tags


def select_bessel_regime(nu: float, x: float) -> BesselRegime:
    """Evaluation strategy for I_nu(x).

    Power series for x <= max(30, nu), except that orders from 1000 on use
    the Debye expansion once x > 30. Past 1e4 the Hankel expansion when
    nu^2 <= x and the Debye expansion otherwise (nu > 100 there). The
    exponentially scaled library routine covers the band in between, where
    it is accurate to rounding.
    """
    return BesselRegime(_classify(nu, np.array([float(x)]))[0])


def _check_domain(nu: float, x: np.ndarray) -> None:
    if not np.isfinite(nu) or nu < 0:
        raise DomainError(f"Bessel order must be finite and >= 0 (got {nu})")
    if np.any(np.isnan(x)) or np.any(x < 0):
        raise DomainError("Bessel argument must be >= 0")


def _series_log_i(nu: float, x: np.ndarray) -> np.ndarray:
    """log of sum_k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)), x > 0."""
    kmax = SERIES_TERMS + 2 * int(np.ceil(x.max()))
    k = np.arange(kmax, dtype=np.float64)[:, None]
    log_half = np.log(x / 2.0)[None, :]
    terms = (2.0 * k + nu) * log_half - special.gammaln(k + 1.0) - special.gammaln(k + nu + 1.0)
    return special.logsumexp(terms, axis=0)


def _hankel_log_ie(nu: float, x: np.ndarray) -> np.ndarray:
    """log(I_nu(x)) - x from sum_k (-1)^k a_k(nu) / x^k, for nu^2 <= x.

    Each ratio |4 nu^2 - (2k - 1)^2| / (8 k x) is below 1 / (2k) there.
    """
    mu = 4.0 * nu * nu
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, HANKEL_TERMS + 1):
        term = -term * (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x)
        total = total + term
    return -0.5 * (_LOG_2PI + np.log(x)) + np.log(total)


def _debye_u(p: np.ndarray, nu: float) -> np.ndarray:
    """sum_{k=0..4} u_k(p) / nu^k of the uniform large-order expansion."""
    p2 = p * p
    u1 = p * (3.0 - 5.0 * p2) / 24.0
    u2 = p2 * (81.0 - 462.0 * p2 + 385.0 * p2 * p2) / 1152.0
    u3 = p * p2 * (30375.0 - 369603.0 * p2 + 765765.0 * p2**2 - 425425.0 * p2**3) / 414720.0
    u4 = (
        p2
        * p2
        * (
            4465125.0
            - 94121676.0 * p2
            + 349922430.0 * p2**2
            - 446185740.0 * p2**3
            + 185910725.0 * p2**4
        )
        / 39813120.0
    )
    inv = 1.0 / nu
    return 1.0 + inv * (u1 + inv * (u2 + inv * (u3 + inv * u4)))


def _uniform_log_ie(nu: float, x: np.ndarray) -> np.ndarray:
    """log(I_nu(x)) - x for large nu, any x > 0."""
    r = np.hypot(nu, x)
    p = nu / r
    r_minus_x = nu * nu / (r + x)
    return (
        r_minus_x
        + nu * np.log(x / (nu + r))
        - 0.5 * (_LOG_2PI + np.log(r))
        + np.log(_debye_u(p, nu))
    )


def _scaled_library_log_ie(nu: float, x: np.ndarray) -> np.ndarray:
    return np.log(special.ive(nu, x))


_EVALUATORS = {
    BesselRegime.SERIES_SMALL_ARG: lambda nu, x: _series_log_i(nu, x) - x,
    BesselRegime.SCALED_LIBRARY: _scaled_library_log_ie,
    BesselRegime.ASYMPTOTIC_LARGE_ARG: _hankel_log_ie,
    BesselRegime.UNIFORM_LARGE_ORDER: _uniform_log_ie,
}


def log_bessel_ie(nu: float, x: ArrayLike) -> np.ndarray | float:
    """log(I_nu(x)) - x, elementwise over x.

    At x = 0 the value is 0 for nu = 0 and -inf for nu > 0.

    Raises:
        DomainError: nu < 0 or any x < 0.
    """
    arr = np.asarray(x, dtype=np.float64)
    flat = np.atleast_1d(arr).ravel()
    _check_domain(nu, flat)

    out = np.empty_like(flat)
    zero = flat == 0.0
    out[zero] = 0.0 if nu == 0.0 else -np.inf

    positive = ~zero
    if np.any(positive):
        xs = flat[positive]
        tags = _classify(nu, xs)
        values = np.empty_like(xs)
        for regime, evaluate in _EVALUATORS.items():
            mask = tags == regime.value
            if np.any(mask):
                values[mask] = evaluate(nu, xs[mask])
        out[positive] = values

    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def log_bessel_i(nu: float, x: ArrayLike) -> np.ndarray | float:
    """Natural log of the modified Bessel function of the first kind I_nu(x)."""
    scaled = log_bessel_ie(nu, x)
    if isinstance(scaled, float):
        return scaled + float(x)  # type: ignore[arg-type]
    return scaled + np.asarray(x, dtype=np.float64)


def log_gamma(z: ArrayLike) -> np.ndarray | float:
    """log Gamma(z) for z > 0."""
    arr = np.asarray(z, dtype=np.float64)
    if np.any(np.isnan(arr)) or np.any(arr <= 0):
        raise DomainError("log_gamma needs z > 0")
    result = special.gammaln(arr)
    if arr.ndim == 0:
        return float(result)
    return result
