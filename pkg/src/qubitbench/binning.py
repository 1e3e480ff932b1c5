"""2D (time x value) binned aggregation behind the focus and context heatmaps.

Time coordinates are fractional days since 1970-01-01; calendar day d covers
the half-open interval [epoch(d), epoch(d) + 1), so a window of inclusive
days [t0, t1] spans [epoch(t0), epoch(t1) + 1) and is never degenerate.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from datetime import date

from .device_data import MetricSeries, bin_index, uniform_edges

_EPOCH = date(1970, 1, 1)


def epoch_day(day: date) -> int:
    return (day - _EPOCH).days


@dataclass(frozen=True)
class FocusSelection:
    t_start: date
    t_end: date

    def __post_init__(self) -> None:
        if self.t_start > self.t_end:
            raise ValueError("selection start is after its end")


@dataclass(frozen=True)
class HeatmapGrid:
    time_edges: tuple[float, ...]          # nx + 1 epoch-day boundaries
    value_edges: tuple[float, ...]         # ny + 1 value boundaries
    counts: tuple[tuple[int, ...], ...]    # [time][value]
    members: tuple[tuple[tuple[tuple[int, date], ...], ...], ...]
    bin_values: tuple[tuple[tuple[float, ...], ...], ...]
    per_bin_median: tuple[tuple[float | None, ...], ...]

    @property
    def nx(self) -> int:
        return len(self.time_edges) - 1

    @property
    def ny(self) -> int:
        return len(self.value_edges) - 1

    def total_count(self) -> int:
        return sum(sum(row) for row in self.counts)

    def to_payload(self, include_members: bool = False) -> dict:
        payload: dict = {
            "time_edges": list(self.time_edges),
            "value_edges": list(self.value_edges),
            "counts": [list(row) for row in self.counts],
            "medians": [list(row) for row in self.per_bin_median],
        }
        if include_members:
            payload["members"] = [
                [[[qubit, day.isoformat()] for qubit, day in cell] for cell in row]
                for row in self.members
            ]
        return payload


def data_span(series_set: list[MetricSeries]) -> tuple[date, date]:
    """First and last day carrying any present value."""
    days = [day
            for s in series_set
            for day, v in zip(s.grid, s.values) if v is not None]
    if not days:
        raise ValueError("no present data points")
    return min(days), max(days)


def default_bin_counts(series_set: list[MetricSeries]) -> tuple[int, int]:
    """Default grid resolution: one time bin per day up to 128, 32 value bins."""
    days = {day for s in series_set
            for day, v in zip(s.grid, s.values) if v is not None}
    return max(min(len(days), 128), 1), 32


def bin2d(series_set: list[MetricSeries],
          time_range: tuple[date, date] | None,
          nx: int, ny: int,
          value_range: tuple[float, float] | None = None) -> HeatmapGrid:
    """Bin every present (day, value) point of the series set into an
    nx x ny grid; the value range defaults to [min, max] of in-range data."""
    if nx < 1 or ny < 1:
        raise ValueError(f"bin counts must be >= 1, got nx={nx} ny={ny}")
    if time_range is None:
        time_range = data_span(series_set)
    t0, t1 = time_range
    if t0 > t1:
        raise ValueError("empty time range")

    points: list[tuple[int, date, float]] = []
    for s in series_set:
        for day, v in zip(s.grid, s.values):
            if v is None or day < t0 or day > t1:
                continue
            points.append((s.qubit, day, v))
    if not points:
        raise ValueError("no present data points in range")

    time_edges = uniform_edges(float(epoch_day(t0)), float(epoch_day(t1) + 1), nx)

    values = [v for _, _, v in points]
    if value_range is None:
        lo, hi = min(values), max(values)
    else:
        lo, hi = value_range
        if lo >= hi:
            raise ValueError("value range must have positive width")
    degenerate = lo == hi
    value_edges = uniform_edges(lo, hi, ny)

    members: list[list[list[tuple[int, date]]]] = \
        [[[] for _ in range(ny)] for _ in range(nx)]
    bin_values: list[list[list[float]]] = \
        [[[] for _ in range(ny)] for _ in range(nx)]
    for qubit, day, v in points:
        ti = bin_index(time_edges, float(epoch_day(day)))
        if degenerate:
            # all in-range values identical: the shared value is the data
            # maximum, owned by the closed last bin (matches metric_histogram)
            vi = ny - 1
        else:
            vi = bin_index(value_edges, v)
        if ti is None or vi is None:
            continue
        members[ti][vi].append((qubit, day))
        bin_values[ti][vi].append(v)

    counts = tuple(tuple(len(cell) for cell in row) for row in members)
    medians = tuple(
        tuple(statistics.median(cell) if cell else None for cell in row)
        for row in bin_values
    )
    return HeatmapGrid(
        time_edges, value_edges, counts,
        tuple(tuple(tuple(cell) for cell in row) for row in members),
        tuple(tuple(tuple(cell) for cell in row) for row in bin_values),
        medians,
    )


def refocus(series_set: list[MetricSeries], selection: FocusSelection,
            nx: int, ny: int) -> HeatmapGrid:
    """Re-bin over the selected window; the value axis is recomputed from the
    window's own data.  The selection must lie within the data span."""
    span_lo, span_hi = data_span(series_set)
    if selection.t_start < span_lo or selection.t_end > span_hi:
        raise ValueError(
            f"selection {selection.t_start.isoformat()}..{selection.t_end.isoformat()} "
            f"outside data span {span_lo.isoformat()}..{span_hi.isoformat()}")
    return bin2d(series_set, (selection.t_start, selection.t_end), nx, ny)


def bin_stats(grid: HeatmapGrid, i: int, j: int) -> dict:
    """Count, median and distinct qubits of one bin."""
    if not (0 <= i < grid.nx and 0 <= j < grid.ny):
        raise IndexError(f"bin ({i},{j}) outside {grid.nx}x{grid.ny} grid")
    cell_values = grid.bin_values[i][j]
    return {
        "count": grid.counts[i][j],
        "median": statistics.median(cell_values) if cell_values else None,
        "qubits": sorted({qubit for qubit, _ in grid.members[i][j]}),
    }
