"""Index-ordered fan-out of Monte Carlo replications."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor

import numpy as np

logger = logging.getLogger(__name__)

ChunkFn = Callable[[int, int], np.ndarray]
ProgressFn = Callable[[int], None]

CHUNKS_PER_WORKER = 4


def _chunks(m: int, count: int) -> list[tuple[int, int]]:
    size = max(1, -(-m // count))
    return [(start, min(start + size, m)) for start in range(0, m, size)]


def map_indexed(
    fn: ChunkFn,
    m: int,
    workers: int = 1,
    progress: ProgressFn | None = None,
) -> np.ndarray:
    """Evaluate fn(start, stop) over contiguous chunks of range(m) and concatenate.

    fn must return one row per index in [start, stop). Each replication owns
    its random stream, so the result does not depend on ``workers``. With
    workers > 1, fn must be picklable (a module-level function or a partial).
    """
    if m <= 0:
        raise ValueError(f"m must be positive (got {m})")
    if workers < 1:
        raise ValueError(f"workers must be >= 1 (got {workers})")

    chunks = _chunks(m, max(workers * CHUNKS_PER_WORKER, 10))
    starts, stops = zip(*chunks)
    if workers == 1:
        return _collect(map(fn, starts, stops), progress)

    logger.info("Dispatching %d replications to %d workers", m, workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return _collect(executor.map(fn, starts, stops), progress)


def _collect(results: Iterable[np.ndarray], progress: ProgressFn | None) -> np.ndarray:
    parts: list[np.ndarray] = []
    done = 0
    for part in results:
        parts.append(part)
        done += len(part)
        if progress is not None:
            progress(done)
    return np.concatenate(parts)
