"""Synthetic calibration data in the shape of the real device archives.

The real 16-month Washington archive is not redistributable, so tests and
demos run on generated data: 127 qubits, daily snapshots from 2022-01-01,
plausible T1/T2 (microseconds) and readout-error magnitudes, optional
missing days.
"""

from __future__ import annotations

from datetime import date, timedelta

import numpy as np

from .device_data import CSV_HEADER

DEFAULT_START = date(2022, 1, 1)
DEFAULT_METRICS = ("T1", "T2", "readout_error")


def synthetic_calibration_csv(num_qubits: int = 127, num_days: int = 485,
                              metrics: tuple[str, ...] = DEFAULT_METRICS,
                              start: date = DEFAULT_START,
                              missing_rate: float = 0.0,
                              seed: int = 7) -> str:
    """CSV text with one row per (day, qubit, metric), header included."""
    rng = np.random.default_rng(seed)
    days = [start + timedelta(days=i) for i in range(num_days)]
    lines = [CSV_HEADER]

    base = {
        "T1": rng.uniform(60.0, 140.0, num_qubits),
        "T2": rng.uniform(40.0, 120.0, num_qubits),
        "readout_error": rng.uniform(0.005, 0.04, num_qubits),
    }
    drift_scale = {"T1": 12.0, "T2": 15.0, "readout_error": 0.008}

    for metric in metrics:
        level = base.get(metric, rng.uniform(0.5, 1.5, num_qubits))
        scale = drift_scale.get(metric, 0.1)
        phase = rng.uniform(0, 2 * np.pi, num_qubits)
        for q in range(num_qubits):
            drift = scale * np.sin(np.arange(num_days) / 37.0 + phase[q])
            noise = rng.normal(0.0, scale * 0.25, num_days)
            values = level[q] + drift + noise
            if metric == "readout_error":
                values = np.clip(values, 1e-4, 0.5)
            else:
                values = np.clip(values, 1.0, None)
            for i, day in enumerate(days):
                if missing_rate > 0 and rng.random() < missing_rate:
                    continue
                lines.append(f"{day.isoformat()},{q},{metric},{values[i]:.6g}")
    return "\n".join(lines) + "\n"
