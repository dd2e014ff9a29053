"""Order-preserving parallel map over worker threads.

Per-flight transformations are independent, so they fan out on anyio worker
threads under a capacity limiter. Results come back in input order, which
keeps every downstream step independent of the thread schedule.
"""

from collections.abc import Sequence
from typing import Callable, Optional, TypeVar

import anyio
import anyio.to_thread

from adsb_sentinel.config import get_worker_count

T = TypeVar("T")
R = TypeVar("R")


async def parallel_map_async(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
) -> list[R]:
    """Apply a blocking function to every item on worker threads.

    Args:
        func: The per-item function
        items: The inputs
        max_workers: Maximum concurrent workers; defaults to ADSB_SENTINEL_THREADS

    Returns:
        A list of results in the same order as the inputs

    Raises:
        Exception: The first exception raised by any item, in input order
    """
    limiter = anyio.CapacityLimiter(max_workers or get_worker_count())
    results: list[Optional[R]] = [None] * len(items)
    exceptions: list[Optional[BaseException]] = [None] * len(items)

    async def run_one(index: int, item: T) -> None:
        try:
            results[index] = await anyio.to_thread.run_sync(
                func, item, limiter=limiter
            )
        except Exception as exc:
            exceptions[index] = exc

    async with anyio.create_task_group() as tg:
        for i, item in enumerate(items):
            tg.start_soon(run_one, i, item)

    for exc in exceptions:
        if exc is not None:
            raise exc

    return results  # type: ignore[return-value]


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = None,
) -> list[R]:
    """Synchronous entry point for :func:`parallel_map_async`.

    Small inputs or a single worker run inline.
    """
    workers = max_workers or get_worker_count()
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    return anyio.run(parallel_map_async, func, items, workers)
