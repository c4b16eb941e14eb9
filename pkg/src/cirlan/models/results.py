"""Result and report models produced by likelihood, estimation and verification."""

from __future__ import annotations

from enum import StrEnum
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from cirlan.models.params import CirParams, LocalAlternative, Regime


class ScorePair(BaseModel):
    """Approximate log-density derivatives (d/da, d/db) for one transition."""

    model_config = ConfigDict(frozen=True)

    s_a: float
    s_b: float


class FisherMatrix(BaseModel):
    """Symmetric 2x2 information matrix for (a, b)."""

    model_config = ConfigDict(frozen=True)

    i_aa: float
    i_ab: float
    i_bb: float

    def as_array(self) -> np.ndarray:
        return np.array([[self.i_aa, self.i_ab], [self.i_ab, self.i_bb]])

    @property
    def determinant(self) -> float:
        return self.i_aa * self.i_bb - self.i_ab * self.i_ab

    def inverse(self) -> np.ndarray:
        """Cramer-Rao bound I^{-1}."""
        return np.linalg.inv(self.as_array())

    def quadratic(self, z: LocalAlternative) -> float:
        """z' I z."""
        return self.i_aa * z.u * z.u + 2.0 * self.i_ab * z.u * z.v + self.i_bb * z.v * z.v


class OptimizerSettings(BaseModel):
    """Stopping rules for the simplex maximizer."""

    model_config = ConfigDict(frozen=True)

    xtol: float = Field(default=1e-7, gt=0)
    max_iter: int = Field(default=500, gt=0)


class EstimateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: Literal["discretized", "exact"]
    sigma: float = Field(gt=0)
    a_hat: float
    b_hat: float
    converged: bool
    iterations: int = Field(ge=0)
    loglik_at_optimum: float
    at_boundary: bool = Field(
        default=False, description="a_hat was projected onto a = sigma"
    )

    @model_validator(mode="after")
    def validate_domain(self) -> EstimateResult:
        if self.converged and self.a_hat < self.sigma:
            raise ValueError(
                f"Converged estimate must satisfy a_hat >= sigma (got {self.a_hat})"
            )
        return self

    def to_record(self, prefix: str = "") -> dict[str, Any]:
        return {
            f"{prefix}method": self.method,
            f"{prefix}a_hat": self.a_hat,
            f"{prefix}b_hat": self.b_hat,
            f"{prefix}converged": self.converged,
            f"{prefix}iterations": self.iterations,
            f"{prefix}loglik": self.loglik_at_optimum,
            f"{prefix}at_boundary": self.at_boundary,
        }


class EfficiencyReport(BaseModel):
    """Spread of rate-scaled estimation errors against the Cramer-Rao bound."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    estimator: Literal["discretized", "exact"]
    mean_error: tuple[float, float]
    sample_cov_scaled: tuple[tuple[float, float], tuple[float, float]]
    crlb: tuple[tuple[float, float], tuple[float, float]]
    max_rel_dev: float
    non_converged: int = 0

    @model_validator(mode="after")
    def validate_symmetric(self) -> EfficiencyReport:
        cov = self.sample_cov_scaled
        if cov[0][1] != cov[1][0]:
            raise ValueError("sample_cov_scaled must be symmetric")
        return self

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"m": self.m, "estimator": self.estimator}
        record["mean_error_a"], record["mean_error_b"] = self.mean_error
        for name, mat in (("cov", self.sample_cov_scaled), ("crlb", self.crlb)):
            record[f"{name}_aa"] = mat[0][0]
            record[f"{name}_ab"] = mat[0][1]
            record[f"{name}_bb"] = mat[1][1]
        record["max_rel_dev"] = self.max_rel_dev
        record["non_converged"] = self.non_converged
        return record


class LimitKind(StrEnum):
    CLOSED_FORM_GAUSSIAN = "closed_form_gaussian"
    SIMULATED_CRITICAL = "simulated_critical"
    SIMULATED_SUPERCRITICAL = "simulated_supercritical"


_KIND_FOR_REGIME = {
    Regime.SUBCRITICAL: LimitKind.CLOSED_FORM_GAUSSIAN,
    Regime.CRITICAL: LimitKind.SIMULATED_CRITICAL,
    Regime.SUPERCRITICAL: LimitKind.SIMULATED_SUPERCRITICAL,
}


class LimitLawSpec(BaseModel):
    """Which limit the log-likelihood ratio at params0 under z converges to."""

    model_config = ConfigDict(frozen=True)

    regime: Regime
    kind: LimitKind
    params0: CirParams
    z: LocalAlternative

    @model_validator(mode="after")
    def validate_kind(self) -> LimitLawSpec:
        expected = _KIND_FOR_REGIME[self.regime]
        if self.kind != expected:
            raise ValueError(f"Limit kind for {self.regime} must be {expected} (got {self.kind})")
        return self

    @classmethod
    def for_regime(cls, regime: Regime, params0: CirParams, z: LocalAlternative) -> LimitLawSpec:
        return cls(regime=regime, kind=_KIND_FOR_REGIME[regime], params0=params0, z=z)

    @property
    def mixed_normal(self) -> bool:
        """b-only supercritical perturbations have a mixed normal (LAMN) limit."""
        return self.regime == Regime.SUPERCRITICAL and self.z.u == 0.0


class VerificationReport(BaseModel):
    """Empirical log-LR sample compared with its theoretical limit.

    theo_mean / theo_var are None when the limit is only available by
    simulation; lim_mean / lim_var then describe the simulated limit sample.
    A gate whose tolerance is None does not take part in ``passed``.
    """

    model_config = ConfigDict(frozen=True)

    regime: Regime
    kind: LimitKind
    u: float
    v: float
    m: int = Field(ge=100)
    m_limit: int | None = None

    emp_mean: float
    emp_mean_se: float
    emp_var: float
    emp_var_se: float
    theo_mean: float | None = None
    theo_var: float | None = None
    lim_mean: float | None = None
    lim_var: float | None = None

    ks_stat: float
    ks_threshold: float
    unit_mean: float
    unit_mean_se: float

    mean_tol_se: float | None = None
    var_rel_tol: float | None = None
    unit_mean_tol_se: float | None = None
    warnings: tuple[str, ...] = ()

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        ok = self.ks_stat < self.ks_threshold
        if self.mean_tol_se is not None and self.theo_mean is not None:
            ok = ok and abs(self.emp_mean - self.theo_mean) <= self.mean_tol_se * self.emp_mean_se
        if self.var_rel_tol is not None and self.theo_var is not None:
            ok = ok and abs(self.emp_var - self.theo_var) <= self.var_rel_tol * self.theo_var
        if self.unit_mean_tol_se is not None:
            ok = ok and abs(self.unit_mean - 1.0) <= self.unit_mean_tol_se * self.unit_mean_se
        return ok

    def to_record(self) -> dict[str, Any]:
        record = self.model_dump(exclude={"warnings", "passed"})
        record["regime"] = self.regime.value
        record["kind"] = self.kind.value
        for key in ("theo_mean", "theo_var"):
            if record[key] is None:
                record[key] = "simulated"
        record["warnings"] = len(self.warnings)
        record["pass"] = self.passed
        return record


class ErgodicReport(BaseModel):
    """Time averages and stationary moments of one long subcritical path."""

    model_config = ConfigDict(frozen=True)

    horizon: float
    n: int
    avg_x: float
    target_x: float
    avg_inv_x: float
    target_inv_x: float
    tail_mean: float
    tail_var: float
    target_var: float
    mean_rel_tol: float = 0.02
    var_rel_tol: float = 0.05

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return (
            abs(self.avg_x / self.target_x - 1.0) <= self.mean_rel_tol
            and abs(self.avg_inv_x / self.target_inv_x - 1.0) <= self.mean_rel_tol
            and abs(self.tail_var / self.target_var - 1.0) <= self.var_rel_tol
        )

    def to_record(self) -> dict[str, Any]:
        record = self.model_dump(exclude={"passed"})
        record["pass"] = self.passed
        return record


class TrendReport(BaseModel):
    """KS distance to the closed-form critical a-direction limit across horizons.

    ``slack`` is the allowed rise between consecutive horizons (Monte Carlo noise).
    """

    model_config = ConfigDict(frozen=True)

    u: float
    horizons: tuple[float, ...]
    ks_stats: tuple[float, ...]
    theo_mean: float
    theo_var: float
    slack: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def validate_lengths(self) -> TrendReport:
        if len(self.horizons) != len(self.ks_stats):
            raise ValueError("horizons and ks_stats must have equal length")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def non_increasing(self) -> bool:
        return all(b <= a + self.slack for a, b in zip(self.ks_stats, self.ks_stats[1:]))

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"u": self.u, "theo_mean": self.theo_mean,
                                  "theo_var": self.theo_var}
        for horizon, ks in zip(self.horizons, self.ks_stats):
            record[f"ks_at_{horizon:g}"] = ks
        record["slack"] = self.slack
        record["non_increasing"] = self.non_increasing
        return record
