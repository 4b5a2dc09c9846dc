import time

import pytest

from grothendieck.opt import optimize_band, sweep_table


@pytest.fixture(scope="session")
def timed_table():
    """Default-settings table for d = 3..9, one timed sweep per row."""
    rows, seconds = {}, {}
    for d in range(3, 10):
        t0 = time.perf_counter()
        (row,) = sweep_table(d, d, 1e-8)
        seconds[d] = time.perf_counter() - t0
        rows[d] = row
    return rows, seconds


@pytest.fixture(scope="session")
def optimum3():
    return optimize_band(3)
