"""
Worker pool for verification sweeps.

Sweeps are split into ordered batches, each batch produces a
VerificationReport, and the reports are merged in batch order so that the
result does not depend on scheduling. The number of worker threads is
capped by the DGL_THREADS environment variable.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from dgl_lib.core.report import VerificationReport, merge_reports

T = TypeVar('T')

THREADS_ENV = 'DGL_THREADS'


def worker_count() -> int:
    """Reads DGL_THREADS; unset means one worker, invalid values fall back to one."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == '':
        return 1
    try:
        value = int(raw)
    except ValueError:
        logging.warning(f"Ignoring non-integer {THREADS_ENV}='{raw}'; using 1 worker.")
        return 1
    return max(1, value)


def batched(items: Sequence[T], batch_size: int) -> List[Sequence[T]]:
    if batch_size < 1:
        raise ValueError("batch_size must be positive.")
    return [items[i:i + batch_size] for i in range(0, len(items), batch_size)]


def run_batches(title: str, batches: Sequence[Sequence[T]],
                job: Callable[[Sequence[T]], VerificationReport]) -> VerificationReport:
    """
    Runs job on every batch and merges the reports in batch order.

    Args:
        title: Title of the merged report.
        batches: Ordered work batches.
        job: Pure function from a batch to its report.
    """
    workers = min(worker_count(), max(1, len(batches)))
    if workers == 1:
        reports = [job(batch) for batch in batches]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(job, batches))
    return merge_reports(title, reports)


def map_ordered(fn: Callable[[T], object], items: Sequence[T]) -> list:
    """Maps fn over items with the capped pool, preserving order."""
    workers = min(worker_count(), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
