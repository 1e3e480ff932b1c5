from __future__ import annotations

import pytest

from qubitbench.device_data import DataStore, ingest_csv
from qubitbench.fixtures import synthetic_calibration_csv
from qubitbench.topology import DeviceTopology, heavy_hex_127


@pytest.fixture(scope="session")
def small_store() -> DataStore:
    # 9 qubits x 40 days x 3 metrics keeps service tests quick
    return ingest_csv(synthetic_calibration_csv(num_qubits=9, num_days=40, seed=13))


@pytest.fixture(scope="session")
def heavy_hex() -> DeviceTopology:
    return heavy_hex_127()


@pytest.fixture(scope="session")
def line3() -> DeviceTopology:
    return DeviceTopology(3, ((0, 1), (1, 2)))
