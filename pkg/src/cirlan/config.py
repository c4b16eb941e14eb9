"""TOML-based run configuration, one section per subcommand."""

from __future__ import annotations

import os
import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from cirlan.errors import ConfigError

DEFAULT_CONFIG_PATHS = [
    Path("cirlan.toml"),
    Path.home() / ".config" / "cirlan" / "config.toml",
]

SEED_ENV_VAR = "CIRLAN_SEED"


class SectionConfig(BaseModel):
    """Base for subcommand sections; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")


class ModelSection(SectionConfig):
    """Model parameters shared by the simulation-based sections."""

    a: float = Field(default=1.1, description="Drift level a")
    b: float = Field(default=0.5, description="Mean reversion b")
    sigma: float = Field(default=0.1, description="Diffusion scale sigma")
    x0: float = Field(default=1.0, description="Initial state")


class SimulateConfig(ModelSection):
    """Simulate one path and write it as a t,x series."""

    n: int = Field(default=1000, description="Number of steps")
    delta: float = Field(default=0.01, description="Step size")
    seed: int | None = Field(default=None, ge=0, description="Random seed")
    method: Literal["exact", "euler"] = Field(default="exact", description="Sampler")
    substeps: int = Field(default=64, ge=1, description="Euler substeps per step")
    out: str = Field(default="", description="Output CSV (stdout if empty)")


class DensityConfig(ModelSection):
    """Tabulate the transition density over a y-grid."""

    x: float = Field(default=1.0, description="Starting state")
    dt: float = Field(default=0.1, gt=0, description="Transition time")
    y_min: float | None = Field(default=None, description="Grid start (default mean - 12 sd)")
    y_max: float | None = Field(default=None, description="Grid end (default mean + 12 sd)")
    points: int = Field(default=2001, ge=2, description="Grid size")
    near_critical: bool = Field(default=False, description="Force the b = 0 density")
    out: str = Field(default="", description="Output CSV (stdout if empty)")


class EstimateConfig(SectionConfig):
    """Estimate (a, b) from an observed series with sigma known."""

    input: str = Field(default="", description="Series CSV with header t,x")
    sigma: float = Field(default=0.1, description="Known diffusion scale sigma")
    exact: bool = Field(default=False, description="Also run the exact MLE")
    xtol: float = Field(default=1e-7, gt=0, description="Simplex size tolerance")
    max_iter: int = Field(default=500, gt=0, description="Simplex iteration cap")
    out: str = Field(default="", description="Report file (stdout if empty)")


class LanConfig(ModelSection):
    """Compare log-likelihood ratios with their limit law."""

    n: int = Field(default=5000, description="Number of steps")
    delta: float = Field(default=0.02, description="Step size")
    u: float = Field(default=0.0, description="Perturbation of a")
    v: float = Field(default=0.0, description="Perturbation of b")
    m: int = Field(default=2000, gt=0, description="Empirical log-ratio samples")
    m_limit: int = Field(default=2000, gt=0, description="Simulated limit draws")
    substeps: int = Field(default=256, ge=2, description="Limit-law grid points")
    phi1: float | None = Field(default=None, gt=0, description="Override rate for a")
    phi2: float | None = Field(default=None, gt=0, description="Override rate for b")
    near_critical: bool = Field(default=False, description="Force the b = 0 density")
    seed: int | None = Field(default=None, ge=0, description="Random seed")
    workers: int = Field(default=1, ge=1, description="Worker processes")
    dump: str = Field(default="", description="CSV of raw samples")
    out: str = Field(default="", description="Report file (stdout if empty)")


class ErgodicConfig(ModelSection):
    """Check time averages of one long path against the stationary law."""

    horizon: float = Field(default=2000.0, gt=0, description="Total simulated time")
    delta: float = Field(default=0.05, description="Step size")
    tail_fraction: float = Field(default=0.5, gt=0, le=1, description="Tail share for moments")
    seed: int | None = Field(default=None, ge=0, description="Random seed")
    out: str = Field(default="", description="Report file (stdout if empty)")


class AppConfig(BaseModel):
    """Top-level configuration: one optional section per subcommand."""

    model_config = ConfigDict(extra="forbid")

    simulate: SimulateConfig = Field(default_factory=SimulateConfig)
    density: DensityConfig = Field(default_factory=DensityConfig)
    estimate: EstimateConfig = Field(default_factory=EstimateConfig)
    lan: LanConfig = Field(default_factory=LanConfig)
    ergodic: ErgodicConfig = Field(default_factory=ErgodicConfig)


SECTIONS: dict[str, type[SectionConfig]] = {
    "simulate": SimulateConfig,
    "density": DensityConfig,
    "estimate": EstimateConfig,
    "lan": LanConfig,
    "ergodic": ErgodicConfig,
}


def load_config(path: Path | None = None) -> AppConfig:
    """Load config from TOML file, falling back to defaults.

    Resolution order for the config file:
    1. Explicit path argument (must exist)
    2. cirlan.toml in current directory
    3. ~/.config/cirlan/config.toml
    4. All defaults

    Raises:
        ConfigError: missing explicit file, bad TOML or schema violation.
    """
    _load_dotenv()

    if path is not None:
        if not path.exists():
            raise ConfigError(f"Config file not found: {path}")
        return _parse_toml(path)

    for candidate in DEFAULT_CONFIG_PATHS:
        if candidate.exists():
            return _parse_toml(candidate)

    return AppConfig()


def section_with_overrides(
    config: AppConfig, name: str, overrides: dict[str, Any]
) -> SectionConfig:
    """Section ``name`` with flag values replacing file values, re-validated."""
    section = getattr(config, name)
    merged = {**section.model_dump(exclude_unset=True), **overrides}
    try:
        return SECTIONS[name].model_validate(merged)
    except ValidationError as exc:
        raise ConfigError(f"Invalid [{name}] settings:\n{exc}") from exc


def resolve_seed(seed: int | None) -> int:
    """Flag or file seed, then the CIRLAN_SEED environment variable, then 0."""
    if seed is not None:
        return seed
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return 0
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer (got {raw!r})") from exc
    if value < 0:
        raise ConfigError(f"{SEED_ENV_VAR} must be >= 0 (got {value})")
    return value


def _load_dotenv() -> None:
    """Load .env file from current directory if it exists.

    Existing environment variables are NOT overwritten.
    """
    env_path = Path(".env")
    if not env_path.exists():
        return

    for line in env_path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in os.environ:
            os.environ[key] = value.strip().strip("\"'")


def _parse_toml(path: Path) -> AppConfig:
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"Malformed TOML in {path}: {exc}") from exc
    try:
        return AppConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid config {path}:\n{exc}") from exc
