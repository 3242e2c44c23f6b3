"""Deterministic chunked map over a process pool.

Work is split into contiguous chunks and results come back in chunk
order, so merged output never depends on the number of workers.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Sequence

from django.conf import settings

logger = logging.getLogger(__name__)


def default_jobs() -> int:
    return max(1, int(getattr(settings, 'UNITAL_JOBS', 1)))


def chunked(items: Sequence, n_chunks: int) -> list[Sequence]:
    n_chunks = max(1, min(n_chunks, len(items) or 1))
    size, extra = divmod(len(items), n_chunks)
    chunks, start = [], 0
    for i in range(n_chunks):
        end = start + size + (1 if i < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks


def chunked_map(func: Callable, items: Sequence, *args, jobs: int | None = None) -> list:
    """Apply ``func(*args, chunk)`` to chunks of items; results in chunk order.

    ``func`` must be a module-level function when jobs > 1.
    """
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or len(items) < 2:
        return [func(*args, items)]
    chunks = chunked(items, jobs * 4)
    logger.debug('dispatching %d chunks to %d workers', len(chunks), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(partial(func, *args), chunks))
