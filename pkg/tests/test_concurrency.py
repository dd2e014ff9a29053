"""Tests for the order-preserving parallel map."""

import threading
import time

import pytest

from adsb_sentinel.concurrency import parallel_map, parallel_map_async


def _slow_square(x):
    # later items finish first
    time.sleep(0.002 * (10 - x))
    return x * x


@pytest.mark.parametrize("workers", [1, 2, 4])
def test_results_keep_input_order(workers):
    assert parallel_map(_slow_square, list(range(10)), workers) == [x * x for x in range(10)]


def test_single_worker_runs_inline():
    threads = parallel_map(lambda _: threading.get_ident(), [1, 2, 3], 1)
    assert set(threads) == {threading.get_ident()}


def test_empty_input():
    assert parallel_map(_slow_square, [], 4) == []


def test_first_failure_in_input_order_is_raised():
    def check(x):
        if x in (3, 7):
            raise ValueError(f"bad item {x}")
        return x

    with pytest.raises(ValueError, match="bad item 3"):
        parallel_map(check, list(range(10)), 4)


def test_capacity_is_limited():
    active, peak = [0], [0]
    lock = threading.Lock()

    def work(x):
        with lock:
            active[0] += 1
            peak[0] = max(peak[0], active[0])
        time.sleep(0.01)
        with lock:
            active[0] -= 1
        return x

    assert parallel_map(work, list(range(12)), 3) == list(range(12))
    assert peak[0] <= 3


@pytest.mark.anyio
async def test_async_entry_point():
    assert await parallel_map_async(_slow_square, [3, 1, 2], 2) == [9, 1, 4]
