"""Monte Carlo acceptance runs at desk scale. Deselected by default; run with ``-m slow``."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from cirlan.estimate import efficiency_experiment
from cirlan.lanlab.checks import laq_check_critical, laq_trend_critical
from cirlan.main import main
from cirlan.models.params import CirParams, LocalAlternative, SamplingScheme
from cirlan.sim.rng import RngStream

pytestmark = pytest.mark.slow

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _run_config(
    name: str, tmp_path: Path, command: str = "lan"
) -> tuple[int, dict[str, str]]:
    report = tmp_path / "report.txt"
    argv = ["--config", str(CONFIGS / name), command, "--out", str(report)]
    try:
        main(argv)
        code = 0
    except SystemExit as exc:
        code = int(exc.code or 0)
    record = dict(line.split("=", 1) for line in report.read_text().splitlines())
    return code, record


class TestShippedConfigs:
    def test_subcritical_lan(self, tmp_path: Path):
        code, record = _run_config("lan_subcritical.toml", tmp_path)
        assert code == 0
        assert abs(float(record["emp_mean"]) + 1.75) < 3 * float(record["emp_mean_se"])
        assert abs(float(record["emp_var"]) / 3.5 - 1.0) < 0.15

    def test_subcritical_wrong_rate_fails(self, tmp_path: Path):
        code, record = _run_config("lan_subcritical_wrong_rate.toml", tmp_path)
        assert code == 5
        assert record["pass"] == "false"

    def test_critical_v_direction(self, tmp_path: Path):
        code, record = _run_config("laq_critical.toml", tmp_path)
        assert code == 0
        assert record["kind"] == "simulated_critical"

    def test_supercritical_v_direction(self, tmp_path: Path):
        code, record = _run_config("lamn_supercritical.toml", tmp_path)
        assert code == 0
        assert record["regime"] == "supercritical"
        assert float(record["unit_mean_tol_se"]) == 4.0
        assert abs(float(record["unit_mean"]) - 1.0) <= 4.0 * float(record["unit_mean_se"])

    def test_supercritical_wrong_rate_fails(self, tmp_path: Path):
        code, _ = _run_config("lamn_supercritical_wrong_rate.toml", tmp_path)
        assert code == 5

    def test_ergodic(self, tmp_path: Path):
        code, record = _run_config("ergodic.toml", tmp_path, "ergodic")
        assert code == 0
        assert abs(float(record["avg_x"]) / 2.2 - 1.0) <= 0.02


class TestCriticalDirections:
    def test_unit_mean_with_both_directions(self):
        params0 = CirParams(a=1.1, b=0.0, sigma=0.1, x0=1.0)
        report = laq_check_critical(
            params0,
            SamplingScheme(n=10_000, delta=0.01),
            LocalAlternative(u=0.5, v=1.0),
            m=2000,
            m_limit=2000,
            substeps=256,
            rng=RngStream(seed=7),
        )
        assert abs(report.unit_mean - 1.0) <= 4 * report.unit_mean_se

    def test_u_direction_trend(self):
        params0 = CirParams(a=1.1, b=0.0, sigma=0.1, x0=1.0)
        report = laq_trend_critical(
            params0, (50.0, 100.0, 200.0), delta=0.05, u=1.0, m=2000, rng=RngStream(seed=11)
        )
        assert report.theo_var == pytest.approx(5.0)
        assert report.non_increasing


class TestEfficiency:
    def test_discretized_reaches_crlb(self):
        params0 = CirParams(a=1.1, b=0.5, sigma=0.1, x0=1.0)
        report = efficiency_experiment(
            params0,
            SamplingScheme(n=20_000, delta=0.01),
            m=1000,
            estimator="discretized",
            rng=RngStream(seed=5),
            workers=4,
        )
        np.testing.assert_allclose(report.crlb, [[4.4, 2.0], [2.0, 1.0]])
        assert report.max_rel_dev < 0.2
