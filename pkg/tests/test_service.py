from __future__ import annotations

import json

import jsonschema
import pytest
from fastapi.testclient import TestClient

from qubitbench.api import create_app
from qubitbench.cli import main as cli_main
from qubitbench.fixtures import synthetic_calibration_csv
from qubitbench.schemas import ENDPOINT_SCHEMAS


@pytest.fixture(scope="module")
def client(small_store, heavy_hex):
    return TestClient(create_app(small_store, heavy_hex))


def _check(payload, schema_name):
    jsonschema.validate(payload, ENDPOINT_SCHEMAS[schema_name])


def test_metrics_endpoint(client):
    response = client.get("/api/metrics")
    assert response.status_code == 200
    assert response.json() == ["T1", "T2", "readout_error"]
    _check(response.json(), "metrics")


def test_series_endpoint(client):
    response = client.get("/api/series", params={"metric": "T1"})
    assert response.status_code == 200
    body = response.json()
    _check(body, "series")
    assert [entry["qubit"] for entry in body] == list(range(9))
    assert all(len(entry["grid"]) == len(entry["values"]) for entry in body)


def test_series_unknown_metric(client):
    response = client.get("/api/series", params={"metric": "nope"})
    assert response.status_code == 404
    body = response.json()
    _check(body, "error")
    assert body["code"] == "unknown_metric"


def test_topology_endpoint(client):
    response = client.get("/api/topology")
    assert response.status_code == 200
    body = response.json()
    _check(body, "topology")
    assert body["num_qubits"] == 127


def test_bin2d_endpoint(client):
    request = {"metric": "T2", "nx": 16, "ny": 8}
    response = client.post("/api/bin2d", json=request)
    assert response.status_code == 200
    body = response.json()
    _check(body, "bin2d")
    assert len(body["counts"]) == 16
    assert all(len(row) == 8 for row in body["counts"])
    total = sum(sum(row) for row in body["counts"])
    assert total == 9 * 40


def test_bin2d_default_bin_counts(client):
    response = client.post("/api/bin2d", json={"metric": "T2"})
    assert response.status_code == 200
    body = response.json()
    _check(body, "bin2d")
    assert len(body["counts"]) == 40      # min(#days, 128)
    assert len(body["counts"][0]) == 32


def test_static_dashboard_mount(small_store, heavy_hex, tmp_path):
    (tmp_path / "index.html").write_text("<html><body>dash</body></html>",
                                         encoding="utf-8")
    hosted = TestClient(create_app(small_store, heavy_hex, str(tmp_path)))
    page = hosted.get("/")
    assert page.status_code == 200
    assert "dash" in page.text
    assert hosted.get("/api/metrics").status_code == 200


def test_internal_fault_returns_error_shape(small_store, heavy_hex, monkeypatch):
    from qubitbench import api as api_module

    app = create_app(small_store, heavy_hex)
    monkeypatch.setattr(api_module.wire, "metrics_payload",
                        lambda _store: 1 / 0)
    broken = TestClient(app, raise_server_exceptions=False)
    response = broken.get("/api/metrics")
    assert response.status_code == 500
    body = response.json()
    _check(body, "error")
    assert body["code"] == "internal_error"


def test_bin2d_with_window(client):
    request = {"metric": "T2", "t0": "2022-01-05", "t1": "2022-01-10",
               "nx": 6, "ny": 4}
    response = client.post("/api/bin2d", json=request)
    assert response.status_code == 200
    total = sum(sum(row) for row in response.json()["counts"])
    assert total == 9 * 6


def test_bin2d_qubit_filter(client):
    response = client.post("/api/bin2d", json={
        "metric": "T2", "nx": 8, "ny": 4, "qubits": [1, 4]})
    assert response.status_code == 200
    total = sum(sum(row) for row in response.json()["counts"])
    assert total == 2 * 40
    empty = client.post("/api/bin2d", json={
        "metric": "T2", "nx": 8, "ny": 4, "qubits": [99]})
    assert empty.status_code == 400


def test_histogram_endpoint(client):
    response = client.post("/api/histogram",
                           json={"metric": "T1", "qubit": 3, "bins": 12})
    assert response.status_code == 200
    body = response.json()
    _check(body, "histogram")
    assert sum(body["counts"]) == 40


def test_cluster_endpoint_and_determinism(client):
    request = {"metric": "readout_error", "k": 3, "distance": "euclidean",
               "seed": 7}
    first = client.post("/api/cluster", json=request)
    second = client.post("/api/cluster", json=request)
    assert first.status_code == 200
    assert first.content == second.content  # byte-identical
    body = first.json()
    _check(body, "cluster")
    assert len(body["assignments"]) == 9
    assert len(body["barycenters"]) == 3


def test_cluster_dtw_endpoint(client):
    response = client.post("/api/cluster", json={
        "metric": "T1", "k": 2, "distance": "dtw", "seed": 1, "band": 3})
    assert response.status_code == 200
    _check(response.json(), "cluster")


def test_cluster_k_too_large(client):
    response = client.post("/api/cluster", json={
        "metric": "T1", "k": 200, "distance": "euclidean", "seed": 0})
    assert response.status_code == 400
    body = response.json()
    _check(body, "error")
    assert "exceeds series count" in body["message"]


def test_matrix_endpoint(client):
    response = client.post("/api/matrix",
                           json={"metric": "T2", "distance": "euclidean"})
    assert response.status_code == 200
    body = response.json()
    _check(body, "matrix")
    assert body["n"] == 9
    assert body["d"][0][0] == 0


def test_transpile_endpoint(client):
    qasm = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n"
    response = client.post("/api/transpile",
                           json={"qasm": qasm, "use_topology": False})
    assert response.status_code == 200
    body = response.json()
    _check(body, "transpile")
    assert body["layout"] is None
    response = client.post("/api/transpile",
                           json={"qasm": qasm, "use_topology": True})
    body = response.json()
    _check(body, "transpile")
    assert sorted(body["layout"]) == list(range(127))


def test_transpile_bad_qasm_reports_location(client):
    response = client.post("/api/transpile", json={
        "qasm": "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[9];\n"})
    assert response.status_code == 400
    body = response.json()
    _check(body, "error")
    assert body["code"] == "bad_qasm"
    assert body["location"]["line"] == 3


def test_validation_error_shape(client):
    response = client.post("/api/cluster", json={"metric": "T1"})
    assert response.status_code == 400
    _check(response.json(), "error")


# --- CLI ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def cli_env(tmp_path_factory, heavy_hex):
    root = tmp_path_factory.mktemp("cli")
    csv_path = root / "calibration.csv"
    csv_path.write_text(synthetic_calibration_csv(num_qubits=9, num_days=40,
                                                  seed=13), encoding="utf-8")
    store_path = root / "store.json"
    topo_path = root / "topology.json"
    topo_path.write_text(json.dumps(heavy_hex.to_payload()), encoding="utf-8")
    qasm_path = root / "bell.qasm"
    qasm_path.write_text("OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n",
                         encoding="utf-8")
    assert cli_main(["ingest", "--input", str(csv_path),
                     "--store", str(store_path)]) == 0
    return root


def test_cli_ingest_store_loads(cli_env):
    from qubitbench.device_data import DataStore
    store = DataStore.from_json((cli_env / "store.json").read_text())
    assert len(store) == 9 * 40 * 3


def test_cli_transpile_happy_path(cli_env):
    out = cli_env / "report.json"
    code = cli_main(["transpile", "--qasm", str(cli_env / "bell.qasm"),
                     "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert [lr["level"] for lr in report["levels"]] == [1, 2, 3]


def test_cli_missing_required_flag_exits_1(capsys):
    assert cli_main(["cluster", "--metric", "T1", "--out", "x.json"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_unknown_command_exits_1():
    assert cli_main(["frobnicate"]) == 1


def test_cli_k_too_large_exits_2(cli_env, capsys):
    code = cli_main(["cluster", "--store", str(cli_env / "store.json"),
                     "--metric", "T1", "--k", "200", "--seed", "0",
                     "--out", str(cli_env / "c.json")])
    assert code == 2
    assert "exceeds series count" in capsys.readouterr().err


def test_cli_bad_file_exits_2(cli_env, capsys):
    code = cli_main(["transpile", "--qasm", str(cli_env / "missing.qasm"),
                     "--out", str(cli_env / "r.json")])
    assert code == 2
    capsys.readouterr()


def test_cli_bad_qasm_exits_2(cli_env, capsys):
    bad = cli_env / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[1];\nnope q[0];\n", encoding="utf-8")
    code = cli_main(["transpile", "--qasm", str(bad),
                     "--out", str(cli_env / "r.json")])
    assert code == 2
    assert "unknown_gate" in capsys.readouterr().err


def test_cli_bundled_topology_name(cli_env):
    out = cli_env / "routed_report.json"
    code = cli_main(["transpile", "--qasm", str(cli_env / "bell.qasm"),
                     "--topology", "heavy-hex-127", "--out", str(out)])
    assert code == 0
    assert sorted(json.loads(out.read_text())["layout"]) == list(range(127))


def test_cli_outputs_match_endpoint_bytes(cli_env, client):
    cases = [
        (["cluster", "--store", str(cli_env / "store.json"), "--metric",
          "readout_error", "--k", "3", "--distance", "euclidean", "--seed", "7",
          "--out", str(cli_env / "cluster.json")],
         "cluster.json",
         client.post("/api/cluster", json={
             "metric": "readout_error", "k": 3, "distance": "euclidean",
             "seed": 7})),
        (["bin2d", "--store", str(cli_env / "store.json"), "--metric", "T2",
          "--nx", "16", "--ny", "8", "--out", str(cli_env / "grid.json")],
         "grid.json",
         client.post("/api/bin2d", json={"metric": "T2", "nx": 16, "ny": 8})),
        (["matrix", "--store", str(cli_env / "store.json"), "--metric", "T2",
          "--distance", "euclidean", "--out", str(cli_env / "matrix.json")],
         "matrix.json",
         client.post("/api/matrix", json={"metric": "T2",
                                          "distance": "euclidean"})),
        (["transpile", "--qasm", str(cli_env / "bell.qasm"), "--topology",
          str(cli_env / "topology.json"), "--out", str(cli_env / "report.json")],
         "report.json",
         client.post("/api/transpile", json={
             "qasm": (cli_env / "bell.qasm").read_text(),
             "use_topology": True})),
    ]
    for argv, filename, response in cases:
        assert cli_main(argv) == 0
        assert (cli_env / filename).read_bytes() == response.content
