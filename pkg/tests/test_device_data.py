from __future__ import annotations

import random
from datetime import date, timedelta

import pytest

from oracles import sort_median
from qubitbench.device_data import (
    DataStore,
    IngestError,
    MetricSeries,
    UnknownMetricError,
    build_series,
    ingest_csv,
    metric_histogram,
    series_summary,
)
from qubitbench.fixtures import synthetic_calibration_csv


def test_ingest_two_rows():
    store = ingest_csv("2022-01-01,4,T2,95.2\n2022-01-02,4,T2,101.7")
    assert len(store) == 2
    assert store.metrics() == ["T2"]
    assert store.qubits() == [4]


def test_ingest_empty_input():
    assert len(ingest_csv("")) == 0


def test_ingest_header_line_skipped():
    store = ingest_csv("date,qubit,metric,value\n2022-01-01,0,T1,100.0")
    assert len(store) == 1


def test_ingest_rejects_non_finite():
    with pytest.raises(IngestError, match="non-finite"):
        ingest_csv("2022-01-01,4,T2,NaN")
    with pytest.raises(IngestError, match="non-finite"):
        ingest_csv("2022-01-01,4,T2,inf")


def test_ingest_rejects_duplicates():
    with pytest.raises(IngestError, match="duplicate"):
        ingest_csv("2022-01-01,4,T2,95.2\n2022-01-01,4,T2,96.0")


def test_ingest_reports_line_numbers():
    with pytest.raises(IngestError) as info:
        ingest_csv("2022-01-01,4,T2,95.2\n2022-01-02,not-a-qubit,T2,95.2")
    assert info.value.line == 2


@pytest.mark.parametrize("row", [
    "2022-01-01,4,T2",            # missing field
    "2022-13-01,4,T2,95.2",       # bad date
    "2022-01-01,-1,T2,95.2",      # negative qubit
    "2022-01-01,4,,95.2",         # empty metric
    "2022-01-01,4,T2,abc",        # bad value
])
def test_ingest_rejects_malformed_rows(row):
    with pytest.raises(IngestError):
        ingest_csv(row)


def test_ingestion_is_lossless():
    csv = synthetic_calibration_csv(num_qubits=5, num_days=20, seed=1)
    accepted_rows = len([l for l in csv.splitlines()[1:] if l.strip()])
    store = ingest_csv(csv)
    assert len(store.records) == accepted_rows


def test_store_json_round_trip():
    store = ingest_csv("2022-01-01,4,T2,95.2\n2022-01-02,4,T2,101.7")
    again = DataStore.from_json(store.to_json())
    assert again.records == store.records


def test_build_series_union_grid():
    store = ingest_csv(
        "2022-01-01,0,T1,10\n2022-01-02,0,T1,11\n2022-01-02,1,T1,12")
    series = build_series(store, "T1")
    assert [s.qubit for s in series] == [0, 1]
    assert series[0].grid == (date(2022, 1, 1), date(2022, 1, 2))
    assert series[1].values == (None, 12.0)


def test_build_series_single_record():
    series = build_series(ingest_csv("2022-01-01,3,T1,10"), "T1")
    assert len(series) == 1
    assert series[0].values == (10.0,)


def test_build_series_unknown_metric():
    with pytest.raises(UnknownMetricError):
        build_series(ingest_csv("2022-01-01,3,T1,10"), "T9")


def test_build_series_partitions_records():
    csv = synthetic_calibration_csv(num_qubits=6, num_days=30,
                                    missing_rate=0.1, seed=2)
    store = ingest_csv(csv)
    for metric in store.metrics():
        n_records = sum(1 for r in store.records if r.metric == metric)
        series = build_series(store, metric)
        assert sum(len(s.present()) for s in series) == n_records


def test_full_size_fixture_series():
    # the synthetic stand-in for the 16-month 127-qubit archive
    store = ingest_csv(synthetic_calibration_csv(
        num_qubits=127, num_days=485, metrics=("T2",), seed=4))
    series = build_series(store, "T2")
    assert len(series) == 127
    assert all(len(s.grid) == 485 for s in series)


def _series(values):
    grid = tuple(date(2022, 1, 1) + timedelta(days=i) for i in range(len(values)))
    return MetricSeries(0, "m", grid, tuple(values))


def test_histogram_two_bins():
    hist = metric_histogram(_series([1.0, 1.0, 2.0]), 2)
    assert hist.edges == (1.0, 1.5, 2.0)
    assert hist.counts == (2, 1)


def test_histogram_degenerate_range():
    hist = metric_histogram(_series([5.0]), 3)
    assert hist.edges[0] == pytest.approx(4.5)
    assert hist.edges[-1] == pytest.approx(5.5)
    assert hist.counts == (0, 0, 1)


def test_histogram_conservation():
    rng = random.Random(8)
    values = [rng.random() for _ in range(1000)]
    for bins in (1, 3, 10, 37):
        hist = metric_histogram(_series(values), bins)
        assert sum(hist.counts) == 1000


def test_histogram_errors():
    with pytest.raises(ValueError):
        metric_histogram(_series([1.0]), 0)
    with pytest.raises(ValueError):
        metric_histogram(_series([None, None]), 4)


def test_summary_basics():
    summary = series_summary(_series([1.0, 2.0, 3.0]))
    assert summary["mean"] == 2
    assert summary["median"] == 2
    assert summary["min"] == 1
    assert summary["max"] == 3


def test_summary_with_missing():
    summary = series_summary(_series([1.0, None, 3.0]))
    assert summary["count"] == 2
    assert summary["missing"] == 1
    assert summary["median"] == 2


def test_summary_all_absent():
    summary = series_summary(_series([None, None]))
    assert summary["count"] == 0
    assert summary["median"] is None


def test_summary_median_matches_sort_oracle():
    rng = random.Random(77)
    for _ in range(1000):
        values = [rng.uniform(-50, 50) for _ in range(rng.randint(1, 100))]
        got = series_summary(_series(values))["median"]
        assert got == pytest.approx(sort_median(values), abs=1e-12)
