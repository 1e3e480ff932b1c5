"""Calibration snapshot ingestion, per-qubit metric time series, histograms.

CSV contract: `date,qubit,metric,value` per row (optional header line),
ISO-8601 dates, one measurement per row.  Missing calibration days are kept
as explicit absences in the assembled series; downstream code decides how
to treat them.
"""

from __future__ import annotations

import bisect
import io
import json
import math
import statistics
from dataclasses import dataclass
from datetime import date

CSV_HEADER = "date,qubit,metric,value"
STORE_VERSION = 1


class IngestError(ValueError):
    """Rejected CSV row; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnknownMetricError(KeyError):
    def __init__(self, metric: str):
        super().__init__(metric)
        self.metric = metric

    def __str__(self) -> str:
        return f"unknown metric {self.metric!r}"


@dataclass(frozen=True)
class CalibrationRecord:
    day: date
    qubit: int
    metric: str
    value: float


@dataclass(frozen=True)
class MetricSeries:
    """One qubit's daily values for one metric; None marks a missing day."""

    qubit: int
    metric: str
    grid: tuple[date, ...]
    values: tuple[float | None, ...]

    def __post_init__(self) -> None:
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values lengths differ")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")

    def present(self) -> list[float]:
        return [v for v in self.values if v is not None]


@dataclass(frozen=True)
class Histogram1D:
    edges: tuple[float, ...]
    counts: tuple[int, ...]


class DataStore:
    """Immutable collection of calibration records with a unique
    (date, qubit, metric) key per record."""

    def __init__(self, records: list[CalibrationRecord]):
        index: dict[tuple[date, int, str], float] = {}
        for rec in records:
            key = (rec.day, rec.qubit, rec.metric)
            if key in index:
                raise ValueError(
                    f"duplicate record for {rec.day.isoformat()} qubit {rec.qubit} "
                    f"metric {rec.metric!r}")
            index[key] = rec.value
        self._records = tuple(records)
        self._index = index

    @property
    def records(self) -> tuple[CalibrationRecord, ...]:
        return self._records

    def __len__(self) -> int:
        return len(self._records)

    def metrics(self) -> list[str]:
        return sorted({rec.metric for rec in self._records})

    def qubits(self, metric: str | None = None) -> list[int]:
        return sorted({rec.qubit for rec in self._records
                       if metric is None or rec.metric == metric})

    def to_json(self) -> str:
        doc = {
            "version": STORE_VERSION,
            "records": [
                {"date": r.day.isoformat(), "qubit": r.qubit,
                 "metric": r.metric, "value": r.value}
                for r in self._records
            ],
        }
        return json.dumps(doc)

    @staticmethod
    def from_json(text: str) -> "DataStore":
        doc = json.loads(text)
        if doc.get("version") != STORE_VERSION:
            raise ValueError(f"unsupported store version {doc.get('version')!r}")
        records = [
            CalibrationRecord(date.fromisoformat(r["date"]), int(r["qubit"]),
                              str(r["metric"]), float(r["value"]))
            for r in doc["records"]
        ]
        return DataStore(records)


def _parse_row(line_no: int, line: str) -> CalibrationRecord:
    parts = line.split(",")
    if len(parts) != 4:
        raise IngestError(line_no, f"expected 4 fields, got {len(parts)}")
    raw_date, raw_qubit, metric, raw_value = (p.strip() for p in parts)
    try:
        day = date.fromisoformat(raw_date)
    except ValueError:
        raise IngestError(line_no, f"bad date {raw_date!r}") from None
    try:
        qubit = int(raw_qubit)
    except ValueError:
        raise IngestError(line_no, f"bad qubit index {raw_qubit!r}") from None
    if qubit < 0:
        raise IngestError(line_no, f"negative qubit index {qubit}")
    if not metric:
        raise IngestError(line_no, "empty metric name")
    try:
        value = float(raw_value)
    except ValueError:
        raise IngestError(line_no, f"bad value {raw_value!r}") from None
    if not math.isfinite(value):
        raise IngestError(line_no, f"non-finite value {raw_value!r}")
    return CalibrationRecord(day, qubit, metric, value)


def ingest_csv(source: str | io.TextIOBase) -> DataStore:
    """Parse calibration CSV into a store; duplicates and bad rows rejected."""
    text = source if isinstance(source, str) else source.read()
    records: list[CalibrationRecord] = []
    seen: set[tuple[date, int, str]] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if line_no == 1 and stripped == CSV_HEADER:
            continue
        rec = _parse_row(line_no, stripped)
        key = (rec.day, rec.qubit, rec.metric)
        if key in seen:
            raise IngestError(
                line_no,
                f"duplicate key ({rec.day.isoformat()}, {rec.qubit}, {rec.metric})")
        seen.add(key)
        records.append(rec)
    return DataStore(records)


def build_series(store: DataStore, metric: str) -> list[MetricSeries]:
    """One series per qubit over the union date grid for the metric, sorted
    by qubit; days a qubit was not calibrated appear as None."""
    by_qubit: dict[int, dict[date, float]] = {}
    days: set[date] = set()
    for rec in store.records:
        if rec.metric != metric:
            continue
        by_qubit.setdefault(rec.qubit, {})[rec.day] = rec.value
        days.add(rec.day)
    if not by_qubit:
        raise UnknownMetricError(metric)
    grid = tuple(sorted(days))
    return [
        MetricSeries(qubit, metric, grid,
                     tuple(values.get(day) for day in grid))
        for qubit, values in sorted(by_qubit.items())
    ]


def uniform_edges(lo: float, hi: float, bins: int) -> tuple[float, ...]:
    """Uniform bin edges over [lo, hi]; a degenerate range widens to
    [v - 0.5, v + 0.5] so no bin has zero width."""
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    step = (hi - lo) / bins
    return tuple(lo + i * step for i in range(bins)) + (hi,)


def bin_index(edges: tuple[float, ...], value: float) -> int | None:
    """Left-closed right-open bins, last bin closed; None when out of range."""
    if value < edges[0] or value > edges[-1]:
        return None
    if value == edges[-1]:
        return len(edges) - 2
    return bisect.bisect_right(edges, value) - 1


def metric_histogram(series: MetricSeries, bin_count: int) -> Histogram1D:
    """Histogram of the present values over [min, max] with uniform bins."""
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    values = series.present()
    if not values:
        raise ValueError("series has no present values")
    lo, hi = min(values), max(values)
    edges = uniform_edges(lo, hi, bin_count)
    counts = [0] * bin_count
    if lo == hi:
        # all values identical: the shared value is the data maximum, which
        # the closed last bin owns
        counts[-1] = len(values)
    else:
        for v in values:
            idx = bin_index(edges, v)
            counts[idx] += 1
    return Histogram1D(edges, tuple(counts))


def series_summary(series: MetricSeries) -> dict:
    """Count/missing/min/max/mean/median over present values; an all-absent
    series reports count 0 with None statistics."""
    values = series.present()
    missing = len(series.values) - len(values)
    if not values:
        return {"count": 0, "missing": missing, "min": None, "max": None,
                "mean": None, "median": None}
    return {
        "count": len(values),
        "missing": missing,
        "min": min(values),
        "max": max(values),
        "mean": sum(values) / len(values),
        "median": statistics.median(values),
    }
