"""Observed trajectories and limit-law random draws."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Path(BaseModel):
    """A trajectory observed on the uniform grid t0 + k * delta, k = 0..n."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t0: float = 0.0
    delta: float
    values: np.ndarray

    @field_validator("delta")
    @classmethod
    def validate_delta(cls, v: float) -> float:
        if not (np.isfinite(v) and v > 0):
            raise ValueError(f"delta must be positive (got {v})")
        return v

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, v: object) -> np.ndarray:
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("Path values must be one-dimensional")
        if arr.size < 2:
            raise ValueError(f"Path needs at least 2 values (got {arr.size})")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Path values must be finite")
        bad = np.flatnonzero(arr <= 0)
        if bad.size:
            raise ValueError(f"Path values must be strictly positive (index {bad[0]})")
        arr.flags.writeable = False
        return arr

    @property
    def n(self) -> int:
        """Number of steps (len(values) - 1)."""
        return self.values.size - 1

    @property
    def horizon(self) -> float:
        return self.n * self.delta

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.delta * np.arange(self.values.size)

    def segment(self, start: int, stop: int) -> Path:
        """Sub-path over grid indices start..stop inclusive."""
        return Path(
            t0=self.t0 + start * self.delta,
            delta=self.delta,
            values=self.values[start : stop + 1],
        )


class SubcriticalLimitDraw(BaseModel):
    """Standard normal driving the closed-form Gaussian limit."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    g: float


class CriticalLimitDraw(BaseModel):
    """(R_1, int_0^1 R ds) of the R-process started at 0, plus an independent normal g."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    r1: float = Field(gt=0)
    int_r: float = Field(gt=0)
    g: float = 0.0


class SupercriticalLimitDraw(BaseModel):
    """Functionals of the R-process started at x0 over [0, -1/b0]."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    r_end: float = Field(gt=0)
    int_r: float = Field(gt=0)
    v_stat: float
    z1: float
