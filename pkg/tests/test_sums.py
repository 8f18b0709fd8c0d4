import math

import pytest

from powerwalk.search import nearest_odd
from powerwalk.sums import grid_sums
from powerwalk.torus import TorusGrid


def test_smallest_grid_exact_value():
    # three nonzero modes with cos phi in {0, 0, -1}: S1 = 1 + 1 + 0.5
    gs = grid_sums(TorusGrid(2), 1)
    assert gs.S1 == pytest.approx(2.5, abs=1e-14)
    assert gs.lower == pytest.approx(2.5, abs=1e-14)  # t=1: same sum
    assert gs.S1 <= gs.upper


def test_identity_s3_from_s1():
    for side in (2, 5, 16, 33):
        for t in (1, 3, 7):
            gs = grid_sums(TorusGrid(side), t)
            assert gs.identity_residual() <= 1e-9


def test_bracketing_small():
    for side in (4, 8, 17, 32):
        for t in (1, 3, 5):
            gs = grid_sums(TorusGrid(side), t)
            assert gs.lower <= gs.S1 <= gs.upper, (side, t)


def test_sums_positive_and_ordered():
    gs = grid_sums(TorusGrid(16), 3)
    assert 0 < gs.S1 < gs.S2  # every term of S2 dominates its S1 term here
    assert gs.S3 > 0


def test_split_shell_definition():
    gs = grid_sums(TorusGrid(32), 5)
    assert gs.split_shell == int(math.isqrt(32 * 32 // (4 * 5)))


def test_rejects_bad_power():
    with pytest.raises(ValueError):
        grid_sums(TorusGrid(8), 0)


def test_band_at_log_schedule():
    values = []
    for side in (8, 16, 32, 64):
        n = side * side
        t = nearest_odd(math.log(n))
        gs = grid_sums(TorusGrid(side), t)
        values.append(gs.S1 * t / (n * math.log(n)))
    assert max(values) / min(values) < 4.0
