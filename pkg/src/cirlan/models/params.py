"""Model parameters, sampling schemes and local alternatives.

The diffusion is dX = (a - bX) dt + sqrt(2 sigma X) dB with X_0 = x0.
"""

from __future__ import annotations

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Condition (A): a / sigma above this ratio
CONDITION_A_THRESHOLD = 5.0 + 3.0 * math.sqrt(2.0)

MAX_DELTA = 1.0
MIN_STEPS = 2


class Regime(StrEnum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


class CirParams(BaseModel):
    """The model tuple (a, b, sigma, x0).

    sigma is a known constant; only (a, b) are ever estimated or perturbed.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    a: float = Field(description="Drift level (units of x per unit time)")
    b: float = Field(description="Mean-reversion coefficient (1/time)")
    sigma: float = Field(description="Diffusion scale (units of x per unit time)")
    x0: float = Field(default=1.0, description="Initial state")

    @field_validator("sigma")
    @classmethod
    def validate_sigma(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"sigma must be positive (got {v})")
        return v

    @field_validator("x0")
    @classmethod
    def validate_x0(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"x0 must be positive (got {v})")
        return v

    @model_validator(mode="after")
    def validate_a_above_sigma(self) -> CirParams:
        if self.a < self.sigma:
            raise ValueError(f"a must be >= sigma (got a={self.a}, sigma={self.sigma})")
        return self

    @property
    def shape(self) -> float:
        """Gamma shape a / sigma of the transition and stationary laws."""
        return self.a / self.sigma

    @property
    def nu(self) -> float:
        """Bessel order a / sigma - 1 of the transition density."""
        return self.a / self.sigma - 1.0

    def with_drift(self, a: float, b: float) -> CirParams:
        """Same sigma and x0, new drift parameters (validated)."""
        return CirParams(a=a, b=b, sigma=self.sigma, x0=self.x0)


class SamplingScheme(BaseModel):
    """Equidistant observation grid t_k = k * delta, k = 0..n."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    n: int = Field(description="Number of steps")
    delta: float = Field(description="Step size")

    @field_validator("n")
    @classmethod
    def validate_n(cls, v: int) -> int:
        if v < MIN_STEPS:
            raise ValueError(f"n must be at least {MIN_STEPS} (got {v})")
        return v

    @field_validator("delta")
    @classmethod
    def validate_delta(cls, v: float) -> float:
        if not (0 < v <= MAX_DELTA):
            raise ValueError(f"delta must be in (0, {MAX_DELTA}] (got {v})")
        return v

    @property
    def horizon(self) -> float:
        """Total observed time n * delta."""
        return self.n * self.delta


class LocalAlternative(BaseModel):
    """Perturbation vector z = (u, v)."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    u: float = 0.0
    v: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.u == 0.0 and self.v == 0.0


class RatePair(BaseModel):
    """Rates (phi1, phi2) scaling the perturbation of a and b."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    phi1: float
    phi2: float

    @field_validator("phi1", "phi2")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"Rates must be strictly positive (got {v})")
        return v


class SchemeWarning(BaseModel):
    """Advisory raised by validate_scheme; never fatal."""

    model_config = ConfigDict(frozen=True)

    code: str
    message: str
    value: float
