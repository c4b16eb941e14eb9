"""Tests for observed paths and limit draws."""

import numpy as np
import pytest
from pydantic import ValidationError

from cirlan.models.paths import CriticalLimitDraw, Path


class TestPath:
    def test_grid(self):
        path = Path(t0=1.0, delta=0.5, values=[1.0, 1.2, 0.9])
        assert path.n == 2
        assert path.horizon == pytest.approx(1.0)
        np.testing.assert_allclose(path.times, [1.0, 1.5, 2.0])

    def test_values_read_only(self):
        path = Path(delta=0.1, values=[1.0, 2.0])
        with pytest.raises(ValueError):
            path.values[0] = 5.0

    def test_nonpositive_value_reports_index(self):
        with pytest.raises(ValidationError, match="index 2"):
            Path(delta=0.1, values=[1.0, 2.0, 0.0])

    def test_single_value_rejected(self):
        with pytest.raises(ValidationError, match="at least 2"):
            Path(delta=0.1, values=[1.0])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValidationError, match="finite"):
            Path(delta=0.1, values=[1.0, np.inf])

    @pytest.mark.parametrize("delta", [0.0, -1.0, np.nan])
    def test_bad_delta(self, delta: float):
        with pytest.raises(ValidationError):
            Path(delta=delta, values=[1.0, 2.0])

    def test_segment(self):
        path = Path(delta=0.1, values=[1.0, 1.1, 1.2, 1.3])
        seg = path.segment(1, 3)
        assert seg.t0 == pytest.approx(0.1)
        np.testing.assert_allclose(seg.values, [1.1, 1.2, 1.3])


class TestCriticalLimitDraw:
    def test_g_defaults_to_zero(self):
        assert CriticalLimitDraw(r1=0.5, int_r=0.3).g == 0.0

    def test_positive_functionals_required(self):
        with pytest.raises(ValidationError):
            CriticalLimitDraw(r1=0.0, int_r=0.3)
