"""Worker-thread configuration shared by all streaming kernels.

Kernels split their index space into contiguous per-worker ranges. The
arithmetic performed for any given output element never depends on the
worker count, only on where range boundaries fall, and those boundaries
never cut through an accumulation: results are bitwise reproducible for
any number of workers.
"""

import os
from concurrent.futures import ThreadPoolExecutor

_num_workers = 1
_pool: ThreadPoolExecutor | None = None


def set_num_workers(n: int) -> None:
    """Set the worker count used by kernel-internal parallel loops."""
    global _num_workers, _pool
    if n < 1:
        raise ValueError(f"worker count must be >= 1, got {n}")
    if n != _num_workers and _pool is not None:
        _pool.shutdown(wait=True)
        _pool = None
    _num_workers = n


def num_workers() -> int:
    return _num_workers


def max_workers() -> int:
    return os.cpu_count() or 1


def _get_pool() -> ThreadPoolExecutor:
    global _pool
    if _pool is None:
        _pool = ThreadPoolExecutor(max_workers=_num_workers)
    return _pool


def split_range(n: int, parts: int) -> list[tuple[int, int]]:
    """Split range(n) into at most `parts` contiguous non-empty (lo, hi) spans."""
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    spans = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        spans.append((lo, hi))
        lo = hi
    return spans


def run_spans(fn, n: int) -> None:
    """Invoke fn(lo, hi) over a partition of range(n), using the worker pool.

    Blocking; exceptions from workers propagate to the caller.
    """
    if n <= 0:
        return
    spans = split_range(n, _num_workers)
    if len(spans) == 1:
        fn(0, n)
        return
    futures = [_get_pool().submit(fn, lo, hi) for lo, hi in spans]
    for f in futures:
        f.result()
