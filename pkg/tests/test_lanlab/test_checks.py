"""Tests for the Monte Carlo log-likelihood-ratio checks."""

import math

import numpy as np
import pytest

from cirlan.errors import InsufficientSamples, WrongRegime
from cirlan.lanlab.checks import (
    lamn_check_supercritical,
    lan_check_subcritical,
    laq_check_critical,
    laq_trend_critical,
    limit_law_spec,
    run_lan_check,
    sample_limit_draws,
    sample_loglr_empirical,
)
from cirlan.lanlab.ks import ks_threshold_one_sample, ks_threshold_two_sample
from cirlan.models.params import CirParams, LocalAlternative, RatePair, SamplingScheme
from cirlan.models.results import LimitKind
from cirlan.sim.rng import RngStream

SUB_SCHEME = SamplingScheme(n=500, delta=0.02)
CRIT_SCHEME = SamplingScheme(n=200, delta=0.05)
SUPER_SCHEME = SamplingScheme(n=200, delta=0.01)


class TestLimitLawSpec:
    def test_labels(self, sub_params, crit_params, super_params):
        z = LocalAlternative(v=1.0)
        assert limit_law_spec(sub_params, z).kind == LimitKind.CLOSED_FORM_GAUSSIAN
        assert limit_law_spec(crit_params, z).kind == LimitKind.SIMULATED_CRITICAL
        assert limit_law_spec(super_params, z).mixed_normal


class TestSampleLoglrEmpirical:
    def test_zero_alternative(self, sub_params: CirParams):
        samples = sample_loglr_empirical(
            sub_params, SUB_SCHEME, LocalAlternative(), 150, RngStream(seed=1)
        )
        np.testing.assert_array_equal(samples, np.zeros(150))

    def test_deterministic_and_worker_independent(self, sub_params: CirParams):
        z = LocalAlternative(u=1.0, v=1.0)
        scheme = SamplingScheme(n=50, delta=0.05)
        serial = sample_loglr_empirical(sub_params, scheme, z, 24, RngStream(seed=2))
        again = sample_loglr_empirical(sub_params, scheme, z, 24, RngStream(seed=2))
        parallel = sample_loglr_empirical(sub_params, scheme, z, 24, RngStream(seed=2), workers=2)
        np.testing.assert_array_equal(serial, again)
        np.testing.assert_array_equal(serial, parallel)

    def test_near_critical_at_zero_drift(self, crit_params: CirParams):
        z = LocalAlternative(u=1.0)
        scheme = SamplingScheme(n=50, delta=0.05)
        plain = sample_loglr_empirical(crit_params, scheme, z, 12, RngStream(seed=2))
        forced = sample_loglr_empirical(
            crit_params, scheme, z, 12, RngStream(seed=2), near_critical=True
        )
        assert np.all(plain != 0.0)
        np.testing.assert_array_equal(forced, plain)

    def test_unit_mean_identity(self, sub_params: CirParams):
        z = LocalAlternative(u=0.5, v=0.5)
        scheme = SamplingScheme(n=100, delta=0.05)
        samples = sample_loglr_empirical(sub_params, scheme, z, 400, RngStream(seed=3))
        weights = np.exp(samples)
        se = weights.std(ddof=1) / math.sqrt(samples.size)
        assert abs(weights.mean() - 1.0) < 4 * se


class TestSampleLimitDraws:
    def test_zero_alternative(self, crit_params: CirParams):
        draws = sample_limit_draws(crit_params, LocalAlternative(), 120, RngStream(seed=1))
        np.testing.assert_array_equal(draws, np.zeros(120))

    def test_independent_of_empirical_streams(self, crit_params: CirParams):
        z = LocalAlternative(v=1.0)
        first = sample_limit_draws(crit_params, z, 10, RngStream(seed=4), substeps=8)
        second = sample_limit_draws(crit_params, z, 10, RngStream(seed=4), substeps=8)
        np.testing.assert_array_equal(first, second)
        assert np.unique(first).size == 10


class TestSubcriticalCheck:
    def test_report_fields(self, sub_params: CirParams):
        report = lan_check_subcritical(
            sub_params, SUB_SCHEME, LocalAlternative(u=1.0, v=1.0), 200, RngStream(seed=5)
        )
        assert report.kind == LimitKind.CLOSED_FORM_GAUSSIAN
        assert report.theo_mean == pytest.approx(-1.75)
        assert report.theo_var == pytest.approx(3.5)
        assert report.m == 200
        assert report.m_limit is None
        assert report.ks_threshold == pytest.approx(ks_threshold_one_sample(200))
        assert report.mean_tol_se == 3.0
        assert report.var_rel_tol == 0.15
        assert report.unit_mean_tol_se == 4.0
        assert "unit_mean_split" not in report.warnings

    def test_zero_alternative_passes(self, sub_params: CirParams):
        report = lan_check_subcritical(
            sub_params, SUB_SCHEME, LocalAlternative(), 100, RngStream(seed=6)
        )
        assert report.passed
        assert report.ks_stat == 0.0
        assert report.emp_var == 0.0
        assert report.unit_mean == 1.0

    def test_high_variance_unit_mean_is_gated(self, sub_params: CirParams):
        report = lan_check_subcritical(
            sub_params, SUB_SCHEME, LocalAlternative(v=1.2), 200, RngStream(seed=16)
        )
        assert report.theo_var == pytest.approx(15.84)
        assert "unit_mean_split" in report.warnings
        assert report.unit_mean_tol_se == 4.0
        assert 0.0 < report.unit_mean_se < 0.1
        assert abs(report.unit_mean - 1.0) <= 4.0 * report.unit_mean_se

    def test_wrong_rates_fail(self, sub_params: CirParams):
        report = lan_check_subcritical(
            sub_params,
            SUB_SCHEME,
            LocalAlternative(u=1.0, v=1.0),
            200,
            RngStream(seed=7),
            rates=RatePair(phi1=0.01, phi2=0.01),
        )
        assert report.emp_var < 0.5 * report.theo_var
        assert not report.passed

    def test_condition_a_advisory(self):
        params = CirParams(a=0.5, b=0.5, sigma=0.1)
        report = lan_check_subcritical(
            params, SUB_SCHEME, LocalAlternative(v=1.0), 100, RngStream(seed=8)
        )
        assert "condition_a" in report.warnings

    def test_wrong_regime(self, crit_params: CirParams):
        with pytest.raises(WrongRegime):
            lan_check_subcritical(
                crit_params, CRIT_SCHEME, LocalAlternative(v=1.0), 100, RngStream(seed=1)
            )

    def test_too_few_samples(self, sub_params: CirParams):
        with pytest.raises(InsufficientSamples):
            lan_check_subcritical(
                sub_params, SUB_SCHEME, LocalAlternative(v=1.0), 99, RngStream(seed=1)
            )


class TestSimulatedChecks:
    def test_critical_b_direction(self, crit_params: CirParams):
        report = laq_check_critical(
            crit_params, CRIT_SCHEME, LocalAlternative(v=1.0), 100, 100, 16, RngStream(seed=9)
        )
        assert report.kind == LimitKind.SIMULATED_CRITICAL
        assert report.theo_mean is None
        assert report.lim_mean is not None
        assert report.m_limit == 100
        assert report.ks_threshold == pytest.approx(ks_threshold_two_sample(100, 100))
        assert "critical_rate" not in report.warnings

    def test_critical_a_direction_relaxed(self, crit_params: CirParams):
        report = laq_check_critical(
            crit_params, CRIT_SCHEME, LocalAlternative(u=1.0), 100, 100, 16, RngStream(seed=10)
        )
        assert report.ks_threshold == pytest.approx(2.0 * ks_threshold_two_sample(100, 100))
        assert "critical_rate" in report.warnings

    def test_supercritical(self, super_params: CirParams):
        report = lamn_check_supercritical(
            super_params, SUPER_SCHEME, LocalAlternative(v=2.0), 100, 120, 16, RngStream(seed=11)
        )
        assert report.kind == LimitKind.SIMULATED_SUPERCRITICAL
        assert report.m_limit == 120
        assert np.isfinite(report.emp_mean)
        assert report.emp_var > 8.0
        assert "unit_mean_split" in report.warnings
        assert report.unit_mean_tol_se == 4.0
        assert abs(report.unit_mean - 1.0) <= report.unit_mean_tol_se * report.unit_mean_se

    def test_limit_sample_minimum(self, crit_params: CirParams):
        with pytest.raises(InsufficientSamples):
            laq_check_critical(
                crit_params, CRIT_SCHEME, LocalAlternative(v=1.0), 100, 50, 16, RngStream(seed=1)
            )

    def test_wrong_regime(self, sub_params: CirParams):
        with pytest.raises(WrongRegime):
            lamn_check_supercritical(
                sub_params, SUB_SCHEME, LocalAlternative(v=1.0), 100, 100, 16, RngStream(seed=1)
            )


class TestRunLanCheck:
    def test_dispatch_subcritical(self, sub_params: CirParams):
        outcome = run_lan_check(
            sub_params, SUB_SCHEME, LocalAlternative(v=1.0), 100, 100, 16, RngStream(seed=12)
        )
        assert outcome.samples.size == 100
        assert outcome.limit_samples is None

    def test_dispatch_critical(self, crit_params: CirParams):
        outcome = run_lan_check(
            crit_params, CRIT_SCHEME, LocalAlternative(v=1.0), 100, 110, 16, RngStream(seed=13)
        )
        assert outcome.limit_samples is not None
        assert outcome.limit_samples.size == 110

    def test_zero_alternative_degenerate_pass(self, super_params: CirParams):
        outcome = run_lan_check(
            super_params, SUPER_SCHEME, LocalAlternative(), 100, 100, 16, RngStream(seed=14)
        )
        assert outcome.report.passed
        assert outcome.report.ks_stat == 0.0


class TestCriticalTrend:
    def test_report(self, crit_params: CirParams):
        report = laq_trend_critical(crit_params, (5.0, 10.0), 0.05, 1.0, 100, RngStream(seed=15))
        assert report.horizons == (5.0, 10.0)
        assert len(report.ks_stats) == 2
        assert report.theo_var == pytest.approx(5.0)
        assert report.theo_mean == pytest.approx(-2.5)

    def test_needs_a_direction(self, crit_params: CirParams):
        with pytest.raises(ValueError):
            laq_trend_critical(crit_params, (5.0,), 0.05, 0.0, 100, RngStream(seed=1))
