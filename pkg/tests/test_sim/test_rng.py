"""Tests for keyed random streams."""

import numpy as np
import pytest
from pydantic import ValidationError

from cirlan.sim.rng import (
    ALTERNATIVE_STREAM_OFFSET,
    LIMIT_STREAM_OFFSET,
    RngStream,
    as_generator,
)


class TestRngStream:
    def test_same_key_same_draws(self):
        a = RngStream(seed=7, stream_id=3).generator().standard_normal(5)
        b = RngStream(seed=7, stream_id=3).generator().standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_distinct_streams_differ(self):
        a = RngStream(seed=7, stream_id=3).generator().standard_normal(5)
        b = RngStream(seed=7, stream_id=4).generator().standard_normal(5)
        c = RngStream(seed=8, stream_id=3).generator().standard_normal(5)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_substream_ids(self):
        base = RngStream(seed=1, stream_id=2)
        assert base.substream(5).stream_id == (2 << 32) + 5
        assert base.limit_substream(0).stream_id == (2 << 32) + LIMIT_STREAM_OFFSET
        assert base.alternative_substream(4).stream_id == (2 << 32) + ALTERNATIVE_STREAM_OFFSET + 4

    @pytest.mark.parametrize("index", [-1, 2**32])
    def test_substream_bounds(self, index: int):
        with pytest.raises(ValueError):
            RngStream(seed=1).substream(index)

    def test_negative_seed_rejected(self):
        with pytest.raises(ValidationError):
            RngStream(seed=-1)


class TestAsGenerator:
    def test_generator_passes_through(self):
        gen = np.random.default_rng(0)
        assert as_generator(gen) is gen

    def test_stream_restarts(self):
        stream = RngStream(seed=3)
        assert as_generator(stream).random() == as_generator(stream).random()
