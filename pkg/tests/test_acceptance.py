"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS line once its assertions hold, so `pytest -v -s`
shows one line per criterion.  The whole module has a two-minute budget,
checked by the final test.
"""

from __future__ import annotations

import os
import random
import time

import jsonschema
import numpy as np
import pytest
from fastapi.testclient import TestClient

from oracles import (
    brute_force_dtw,
    permutation_matrix,
    planted_anomalies,
    planted_groups,
    random_circuit,
    sort_median,
)
from qubitbench.api import create_app
from qubitbench.binning import FocusSelection, bin2d, bin_stats, refocus
from qubitbench.circuit import (
    Circuit,
    circuit_unitary,
    depth,
    equivalent_up_to_global_phase,
)
from qubitbench.clustering import (
    DistanceMetricChoice,
    distance_matrix,
    dtw_distance,
    euclidean_barycenter,
    euclidean_distance,
    kmeans_timeseries,
    preprocess_series,
)
from qubitbench.device_data import build_series, ingest_csv
from qubitbench.optimizer import optimization_report, route_to_coupling, translate_to_basis, transpile
from qubitbench.qasm import emit_qasm, parse_qasm
from qubitbench.schemas import ENDPOINT_SCHEMAS
from qubitbench.topology import DeviceTopology, heavy_hex_127
from test_binning import present_points, random_series_set
from test_qasm import CORPUS

_MODULE_T0 = time.monotonic()


def _passed(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


def test_dtw_matches_exhaustive_oracle():
    t0 = time.monotonic()
    rng = random.Random(1234)
    for _ in range(200):
        a = [rng.randint(0, 3) for _ in range(rng.randint(1, 8))]
        b = [rng.randint(0, 3) for _ in range(rng.randint(1, 8))]
        assert dtw_distance(a, b) == pytest.approx(brute_force_dtw(a, b), abs=1e-12)
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"DTW oracle took {elapsed:.1f}s"
    _passed(f"DTW equals exhaustive path enumeration on 200 pairs ({elapsed:.2f}s)")


def test_dtw_vs_euclidean():
    assert dtw_distance([0, 0, 1], [0, 1, 1]) == 0.0
    assert euclidean_distance([0, 0, 1], [0, 1, 1]) == pytest.approx(1.0)
    rng = np.random.default_rng(77)
    for _ in range(1000):
        length = int(rng.integers(1, 30))
        a, b = rng.normal(size=length), rng.normal(size=length)
        assert dtw_distance(a, b) <= euclidean_distance(a, b) + 1e-12
    _passed("DTW warps [0,0,1]/[0,1,1] to 0 and never exceeds Euclidean (1000 pairs)")


def test_barycenter_is_pointwise_mean_and_perturbation_optimal():
    rng = np.random.default_rng(303)
    for _ in range(100):
        members = rng.normal(size=(int(rng.integers(1, 9)), 16))
        bary = euclidean_barycenter(list(members))
        assert np.max(np.abs(bary - members.mean(axis=0))) <= 1e-12
        base_cost = float(np.sum((members - bary) ** 2))
        deltas = rng.normal(0.0, 0.05, size=(1000, 16))
        # direct cost evaluation of each perturbed candidate
        shifted = bary + deltas[:, None, :] - members[None, :, :]
        costs = np.sum(shifted ** 2, axis=(1, 2))
        assert np.all(costs >= base_cost - 1e-12)
    _passed("euclidean barycenter = pointwise mean; no perturbation beats it "
            "(100 sets x 1000 tries)")


def test_planted_cluster_recovery():
    from sklearn.metrics import adjusted_rand_score

    t0 = time.monotonic()
    series, labels = planted_groups(num_groups=6, per_group=20,
                                    noise_fraction=0.05)
    hits = 0
    for seed in range(10):
        result = kmeans_timeseries(series, 6, DistanceMetricChoice("euclidean"),
                                   seed=seed)
        if adjusted_rand_score(labels, result.assignments) >= 0.95:
            hits += 1
    elapsed = time.monotonic() - t0
    assert hits >= 9, f"only {hits}/10 seeds reached ARI >= 0.95"
    assert elapsed < 10.0, f"recovery took {elapsed:.1f}s"
    _passed(f"planted 6x20 groups recovered on {hits}/10 seeds ({elapsed:.2f}s)")


def test_planted_anomaly_matrix():
    series, planted = planted_anomalies(total=127)
    matrix = distance_matrix(series, DistanceMetricChoice("euclidean"))
    row_means = matrix.d.mean(axis=1)
    top4 = sorted(np.argsort(-row_means)[:4].tolist())
    assert top4 == planted
    _passed("4 planted anomalies in 127 series are exactly the top-4 row means")

    archive = os.environ.get("QUBITBENCH_WASHINGTON_CSV")
    if archive:  # informational only, never gating
        store = ingest_csv(open(archive, encoding="utf-8").read())
        data = [preprocess_series(s) for s in build_series(store, "readout_error")]
        m = distance_matrix(data, DistanceMetricChoice("euclidean"))
        top10 = set(np.argsort(-m.d.mean(axis=1))[:10].tolist())
        print(f"INFO: Washington archive qubits 4/9/12/109 in top-10 row means: "
              f"{sorted(top10 & {4, 9, 12, 109})}")


def test_binning_conservation_refocus_and_median():
    rng = random.Random(404)
    checked = 0
    while checked < 100:
        series_set = random_series_set(rng, max_qubits=8, max_days=25)
        days = sorted({d for s in series_set
                       for d, v in zip(s.grid, s.values) if v is not None})
        if not days:
            continue
        lo = days[rng.randrange(len(days))]
        hi = days[rng.randrange(len(days))]
        if lo > hi:
            lo, hi = hi, lo
        expected = present_points(series_set, lo, hi)
        if not expected:
            continue
        nx, ny = rng.randint(1, 10), rng.randint(1, 10)
        grid = bin2d(series_set, (lo, hi), nx, ny)
        assert grid.total_count() == len(expected)
        sub = refocus(series_set, FocusSelection(lo, hi), nx, ny)
        assert sub.total_count() == len(expected)
        for i in range(grid.nx):
            for j in range(grid.ny):
                cell = grid.bin_values[i][j]
                if cell:
                    assert bin_stats(grid, i, j)["median"] == pytest.approx(
                        sort_median(cell), abs=1e-12)
        checked += 1
    _passed("binning conserves counts, refocus matches sub-window, "
            "bin medians match the sort oracle (100 draws)")


def test_qasm_round_trip():
    for src in CORPUS:
        circuit = parse_qasm(src)
        assert parse_qasm(emit_qasm(circuit)) == circuit
    rng = random.Random(505)
    for _ in range(500):
        circuit = random_circuit(rng, max_qubits=5, max_gates=15,
                                 clbits=3, allow_directives=True)
        assert parse_qasm(emit_qasm(circuit)) == circuit
    _passed("parse(emit(c)) == c on the 20-circuit corpus + 500 random circuits")


def test_optimizer_semantic_preservation():
    t0 = time.monotonic()
    rng = random.Random(606)
    line3 = DeviceTopology(3, ((0, 1), (1, 2)))
    for _ in range(100):
        circuit = random_circuit(rng, max_qubits=3, max_gates=12)
        u_in = circuit_unitary(Circuit(3, 0, circuit.ops))
        for level in (1, 2, 3):
            plain, _ = transpile(circuit, level)
            u_plain_in = circuit_unitary(Circuit(plain.num_qubits, 0, circuit.ops))
            assert equivalent_up_to_global_phase(
                u_plain_in, circuit_unitary(plain), 1e-9)
            routed, layout = transpile(circuit, level, line3)
            expect = permutation_matrix(layout.logical_to_physical, 3) @ u_in
            assert equivalent_up_to_global_phase(
                expect, circuit_unitary(routed), 1e-9)
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"optimizer oracle took {elapsed:.1f}s"
    _passed(f"100 random circuits oracle-equivalent at all levels, "
            f"routed and unrouted ({elapsed:.2f}s)")


def test_level_monotonicity_and_known_cancellations():
    rng = random.Random(707)
    for _ in range(40):
        circuit = random_circuit(rng, max_qubits=3, max_gates=12)
        depths = [depth(transpile(circuit, level)[0]) for level in (1, 2, 3)]
        assert depths[2] <= depths[1] <= depths[0]
    for src in ("qreg q[1]; x q[0]; x q[0];",
                "qreg q[2]; cx q[0],q[1]; cx q[0],q[1];"):
        for level in (1, 2, 3):
            out, _ = transpile(parse_qasm("OPENQASM 2.0; " + src), level)
            assert out.ops == ()
    hh = parse_qasm("OPENQASM 2.0; qreg q[1]; h q[0]; h q[0];")
    for level in (2, 3):
        assert depth(transpile(hh, level)[0]) == 0
    _passed("depth_3 <= depth_2 <= depth_1 everywhere; x.x, cx.cx, h.h all vanish")


def test_routing_legality_on_fixture():
    heavy_hex = heavy_hex_127()
    rng = random.Random(808)
    for _ in range(15):
        circuit = translate_to_basis(
            random_circuit(rng, max_qubits=24, max_gates=50))
        routed, _ = route_to_coupling(circuit, heavy_hex)
        for op in routed.ops:
            if op.is_gate and len(op.qubits) >= 2:
                assert (min(op.qubits), max(op.qubits)) in heavy_hex.edge_set
    _passed("every multi-qubit gate sits on a heavy-hex coupling edge after routing")


def test_service_determinism_and_schemas(small_store, heavy_hex):
    client = TestClient(create_app(small_store, heavy_hex))
    cluster_request = {"metric": "readout_error", "k": 6,
                       "distance": "euclidean", "seed": 7}
    first = client.post("/api/cluster", json=cluster_request)
    second = client.post("/api/cluster", json=cluster_request)
    assert first.status_code == 200
    assert first.content == second.content

    responses = {
        "metrics": client.get("/api/metrics"),
        "series": client.get("/api/series", params={"metric": "T1"}),
        "topology": client.get("/api/topology"),
        "bin2d": client.post("/api/bin2d", json={"metric": "T2", "nx": 8, "ny": 6}),
        "histogram": client.post("/api/histogram",
                                 json={"metric": "T1", "qubit": 0, "bins": 10}),
        "cluster": first,
        "matrix": client.post("/api/matrix", json={"metric": "T2",
                                                   "distance": "euclidean"}),
        "transpile": client.post("/api/transpile", json={
            "qasm": "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"}),
    }
    for name, response in responses.items():
        assert response.status_code == 200, name
        jsonschema.validate(response.json(), ENDPOINT_SCHEMAS[name])

    bad = client.post("/api/transpile",
                      json={"qasm": "OPENQASM 2.0;\nqreg q[1];\nzz q[0];\n"})
    assert bad.status_code == 400
    jsonschema.validate(bad.json(), ENDPOINT_SCHEMAS["error"])
    assert bad.json()["code"] == "bad_qasm"
    assert bad.json()["location"]["line"] == 3
    _passed("cluster responses byte-identical; all bodies validate; "
            "bad QASM yields 400 with location")


def test_acceptance_suite_runtime():
    elapsed = time.monotonic() - _MODULE_T0
    assert elapsed < 120.0, f"acceptance suite took {elapsed:.1f}s"
    _passed(f"acceptance suite finished in {elapsed:.1f}s (< 2 min)")
