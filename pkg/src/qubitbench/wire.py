"""Canonical JSON encoding plus the payload builders shared by the HTTP
service and the CLI, so both produce byte-identical output for the same
request parameters."""

from __future__ import annotations

import json
from datetime import date

from .binning import bin2d, default_bin_counts
from .clustering import DistanceMetricChoice, distance_matrix, kmeans_timeseries, preprocess_series
from .device_data import DataStore, build_series, metric_histogram
from .optimizer import optimization_report
from .topology import DeviceTopology


def dumps_canonical(payload) -> bytes:
    """Compact separators, UTF-8, no NaN: the byte form every surface emits."""
    return json.dumps(payload, ensure_ascii=False, allow_nan=False,
                      separators=(",", ":")).encode("utf-8")


def metrics_payload(store: DataStore) -> list[str]:
    return store.metrics()


def series_payload(store: DataStore, metric: str) -> list[dict]:
    series = build_series(store, metric)
    return [
        {
            "qubit": s.qubit,
            "grid": [d.isoformat() for d in s.grid],
            "values": list(s.values),
        }
        for s in series
    ]


def histogram_payload(store: DataStore, metric: str, qubit: int, bins: int) -> dict:
    series = build_series(store, metric)
    match = [s for s in series if s.qubit == qubit]
    if not match:
        raise ValueError(f"no data for qubit {qubit} on metric {metric!r}")
    hist = metric_histogram(match[0], bins)
    return {
        "metric": metric,
        "qubit": qubit,
        "edges": list(hist.edges),
        "counts": list(hist.counts),
    }


def bin2d_payload(store: DataStore, metric: str,
                  nx: int | None = None, ny: int | None = None,
                  t0: date | None = None, t1: date | None = None,
                  qubits: list[int] | None = None,
                  include_members: bool = False) -> dict:
    series = build_series(store, metric)
    if qubits is not None:
        wanted = set(qubits)
        series = [s for s in series if s.qubit in wanted]
        if not series:
            raise ValueError("qubit filter matches no series")
    time_range = None
    if t0 is not None or t1 is not None:
        if t0 is None or t1 is None:
            raise ValueError("t0 and t1 must be given together")
        time_range = (t0, t1)
    default_nx, default_ny = default_bin_counts(series)
    grid = bin2d(series, time_range,
                 default_nx if nx is None else nx,
                 default_ny if ny is None else ny)
    return grid.to_payload(include_members=include_members)


def _preprocessed(store: DataStore, metric: str):
    series = build_series(store, metric)
    return [s.qubit for s in series], [preprocess_series(s) for s in series]


def cluster_payload(store: DataStore, metric: str, k: int, distance: str,
                    seed: int, band: int | None = None) -> dict:
    qubits, data = _preprocessed(store, metric)
    choice = DistanceMetricChoice(distance, band)
    result = kmeans_timeseries(data, k, choice, seed)
    payload = result.to_payload()
    payload["qubits"] = qubits
    return payload


def matrix_payload(store: DataStore, metric: str, distance: str,
                   band: int | None = None) -> dict:
    qubits, data = _preprocessed(store, metric)
    choice = DistanceMetricChoice(distance, band)
    payload = distance_matrix(data, choice).to_payload()
    payload["qubits"] = qubits
    return payload


def transpile_payload(qasm_text: str,
                      topology: DeviceTopology | None = None,
                      levels: tuple[int, ...] = (1, 2, 3)) -> dict:
    return optimization_report(qasm_text, topology, levels).to_payload()
