"""Chunked thread-pool helper with order-independent reductions.

numpy releases the GIL inside the bulk bitwise kernels, so threads give real
speedup on the scans. Every caller reduces chunk results with an associative,
order-free operation (integer sums, min of an index), so the output never
depends on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

_workers = max(1, int(os.environ.get("DIVLAB_THREADS", "1") or 1))


def get_workers() -> int:
    return _workers


def set_workers(workers: int) -> None:
    global _workers
    if workers < 1:
        raise ValueError("workers must be >= 1")
    _workers = int(workers)


def chunk_bounds(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    bounds, lo = [], 0
    for p in range(parts):
        hi = lo + step + (1 if p < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def map_chunks(func, total: int, workers: int | None = None, min_chunk: int = 4096):
    """Apply ``func(lo, hi)`` over contiguous chunks of ``range(total)``.

    Results come back in chunk order regardless of scheduling.
    """
    workers = get_workers() if workers is None else workers
    parts = max(1, min(workers, total // min_chunk))
    bounds = chunk_bounds(total, parts)
    if parts == 1:
        return [func(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=parts) as pool:
        return list(pool.map(lambda b: func(*b), bounds))
