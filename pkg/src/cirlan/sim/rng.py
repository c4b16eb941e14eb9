"""Counter-based random streams keyed by (seed, stream_id)."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

STREAM_ID_LIMIT = 2**64
SUBSTREAM_LIMIT = 2**32
# Empirical paths use substreams below ALTERNATIVE_STREAM_OFFSET, paths under the
# alternative the block up to LIMIT_STREAM_OFFSET, limit-law draws the rest.
ALTERNATIVE_STREAM_OFFSET = 2**30
LIMIT_STREAM_OFFSET = 2**31


class RngStream(BaseModel):
    """Reproducible generator factory.

    Identical (seed, stream_id) pairs give identical draws; distinct pairs
    key independent Philox streams through SeedSequence.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=STREAM_ID_LIMIT)
    stream_id: int = Field(default=0, ge=0, lt=STREAM_ID_LIMIT)

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence([self.seed, self.stream_id])
        return np.random.Generator(np.random.Philox(seq))

    def substream(self, index: int) -> RngStream:
        if not 0 <= index < SUBSTREAM_LIMIT:
            raise ValueError(f"Substream index must be in [0, 2**32) (got {index})")
        return RngStream(seed=self.seed, stream_id=(self.stream_id << 32) + index)

    def alternative_substream(self, index: int) -> RngStream:
        return self.substream(ALTERNATIVE_STREAM_OFFSET + index)

    def limit_substream(self, index: int) -> RngStream:
        return self.substream(LIMIT_STREAM_OFFSET + index)


RngLike = RngStream | np.random.Generator


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng
