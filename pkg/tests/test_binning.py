from __future__ import annotations

import random
from datetime import date, timedelta

import pytest

from oracles import sort_median
from qubitbench.binning import FocusSelection, bin2d, bin_stats, epoch_day, refocus
from qubitbench.device_data import MetricSeries

D0 = date(2022, 1, 1)


def _series(qubit, values, start=D0):
    grid = tuple(start + timedelta(days=i) for i in range(len(values)))
    return MetricSeries(qubit, "m", grid, tuple(values))


def random_series_set(rng: random.Random, max_qubits=8, max_days=30):
    n_qubits = rng.randint(1, max_qubits)
    n_days = rng.randint(1, max_days)
    out = []
    for q in range(n_qubits):
        values = [rng.uniform(-5, 5) if rng.random() > 0.2 else None
                  for _ in range(n_days)]
        out.append(_series(q, values))
    return out


def present_points(series_set, t0, t1):
    return [(s.qubit, d, v) for s in series_set
            for d, v in zip(s.grid, s.values)
            if v is not None and t0 <= d <= t1]


def test_two_by_two_example():
    s0 = _series(0, [0.1, 0.9])
    s1 = _series(1, [0.2, 0.8])
    grid = bin2d([s0, s1], (D0, D0 + timedelta(days=1)), 2, 2, (0.0, 1.0))
    assert grid.counts == ((2, 0), (0, 2))


def test_single_point():
    grid = bin2d([_series(0, [3.0])], None, 4, 5)
    assert grid.total_count() == 1
    assert sum(1 for row in grid.counts for c in row if c) == 1


def test_single_bin_takes_everything():
    series = [_series(0, [1.0, 2.0, None]), _series(1, [None, 4.0, 5.0])]
    grid = bin2d(series, None, 1, 1)
    assert grid.counts == ((4,),)


def test_absent_values_skipped():
    grid = bin2d([_series(0, [1.0, None, 2.0])], None, 3, 2)
    assert grid.total_count() == 2


def test_rejects_bad_bin_counts():
    with pytest.raises(ValueError):
        bin2d([_series(0, [1.0])], None, 0, 2)
    with pytest.raises(ValueError):
        bin2d([_series(0, [1.0])], None, 2, 0)


def test_rejects_empty_range():
    series = [_series(0, [1.0, 2.0])]
    with pytest.raises(ValueError):
        bin2d(series, (D0 + timedelta(days=30), D0 + timedelta(days=40)), 2, 2)


def test_conservation_property():
    rng = random.Random(31)
    for _ in range(100):
        series_set = random_series_set(rng)
        days = [d for s in series_set for d, v in zip(s.grid, s.values)
                if v is not None]
        if not days:
            continue
        t0, t1 = min(days), max(days)
        nx, ny = rng.randint(1, 12), rng.randint(1, 12)
        grid = bin2d(series_set, (t0, t1), nx, ny)
        assert grid.total_count() == len(present_points(series_set, t0, t1))


def test_refocus_full_span_matches_bin2d():
    rng = random.Random(5)
    series_set = random_series_set(rng, max_qubits=4, max_days=12)
    days = [d for s in series_set for d, v in zip(s.grid, s.values) if v is not None]
    sel = FocusSelection(min(days), max(days))
    assert refocus(series_set, sel, 5, 4) == bin2d(series_set, (sel.t_start, sel.t_end), 5, 4)


def test_refocus_single_day():
    series_set = [_series(0, [1.0, 2.0, 3.0])]
    day = D0 + timedelta(days=1)
    grid = refocus(series_set, FocusSelection(day, day), 3, 2)
    assert grid.time_edges[0] == epoch_day(day)
    assert grid.time_edges[-1] == epoch_day(day) + 1
    assert grid.total_count() == 1


def test_refocus_counts_subwindow_points():
    rng = random.Random(17)
    for _ in range(50):
        series_set = random_series_set(rng, max_qubits=5, max_days=20)
        days = sorted({d for s in series_set
                       for d, v in zip(s.grid, s.values) if v is not None})
        if len(days) < 2:
            continue
        lo = days[rng.randrange(len(days) // 2 or 1)]
        hi = days[rng.randrange(len(days) // 2, len(days))]
        expected = present_points(series_set, lo, hi)
        if not expected:
            continue
        grid = refocus(series_set, FocusSelection(lo, hi), 4, 4)
        assert grid.total_count() == len(expected)


def test_refocus_rejects_out_of_span():
    series_set = [_series(0, [1.0, 2.0])]
    with pytest.raises(ValueError, match="outside data span"):
        refocus(series_set, FocusSelection(D0 - timedelta(days=3), D0), 2, 2)


def test_selection_validates_order():
    with pytest.raises(ValueError):
        FocusSelection(D0 + timedelta(days=1), D0)


def test_determinism():
    rng = random.Random(9)
    series_set = random_series_set(rng)
    a = bin2d(series_set, None, 6, 7)
    b = bin2d(series_set, None, 6, 7)
    assert a == b


def test_bin_stats_empty_bin():
    grid = bin2d([_series(0, [1.0, 5.0])], None, 2, 2)
    stats = bin_stats(grid, 0, 1)
    assert stats == {"count": 0, "median": None, "qubits": []}


def test_bin_stats_median_and_qubits():
    series = [_series(0, [3.0]), _series(1, [1.0]), _series(2, [2.0])]
    grid = bin2d(series, None, 1, 1)
    stats = bin_stats(grid, 0, 0)
    assert stats["count"] == 3
    assert stats["median"] == 2
    assert stats["qubits"] == [0, 1, 2]


def test_bin_stats_median_matches_sort_oracle():
    rng = random.Random(23)
    series_set = random_series_set(rng, max_qubits=10, max_days=25)
    grid = bin2d(series_set, None, 5, 5)
    for i in range(grid.nx):
        for j in range(grid.ny):
            cell = grid.bin_values[i][j]
            stats = bin_stats(grid, i, j)
            if cell:
                assert stats["median"] == pytest.approx(sort_median(cell), abs=1e-12)


def test_bin_stats_index_errors():
    grid = bin2d([_series(0, [1.0])], None, 2, 2)
    with pytest.raises(IndexError):
        bin_stats(grid, 2, 0)
    with pytest.raises(IndexError):
        bin_stats(grid, 0, -1)
