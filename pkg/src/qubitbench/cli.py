"""Command-line interface: ingest, cluster, bin2d, matrix, transpile, serve.

Exit codes: 0 success, 1 usage error, 2 data error.  Output files carry the
exact bytes the corresponding HTTP endpoint would return.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date
from pathlib import Path

from . import wire
from .api import serve as serve_app
from .clustering import ClusteringError
from .device_data import DataStore, IngestError, UnknownMetricError, ingest_csv
from .optimizer import OptimizerError
from .qasm import QasmError
from .topology import TopologyError, heavy_hex_127, load_topology


class _Parser(argparse.ArgumentParser):
    # usage faults exit 1 (argparse defaults to 2, which we reserve for data errors)
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="qubitbench",
                     description="Qubit calibration analytics and circuit optimization")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse calibration CSV into a store file")
    p.add_argument("--input", required=True, help="calibration CSV path")
    p.add_argument("--store", required=True, help="output store JSON path")

    p = sub.add_parser("cluster", help="k-means over one metric's series")
    p.add_argument("--store", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--distance", choices=("euclidean", "dtw"), default="euclidean")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--band", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bin2d", help="2D time/value binning of one metric")
    p.add_argument("--store", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--t0", type=date.fromisoformat, default=None)
    p.add_argument("--t1", type=date.fromisoformat, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("matrix", help="all-pairs distance matrix for one metric")
    p.add_argument("--store", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--distance", choices=("euclidean", "dtw"), default="euclidean")
    p.add_argument("--band", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("transpile", help="optimize a QASM circuit at levels 1-3")
    p.add_argument("--qasm", required=True, help="input QASM path")
    p.add_argument("--levels", default="1,2,3", help="comma-separated subset of 1,2,3")
    p.add_argument("--topology", default=None,
                   help="coupling-map JSON path, or 'heavy-hex-127' for the bundled device")
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", required=True)
    p.add_argument("--topology", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--frontend", default=None,
                   help="directory with the built dashboard to host at /")

    return parser


def _read(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise RuntimeError(f"cannot read {what} {path!r}: {exc}") from exc


def _load_store(path: str) -> DataStore:
    return DataStore.from_json(_read(path, "store"))


def _write_payload(path: str, payload) -> None:
    Path(path).write_bytes(wire.dumps_canonical(payload))


def _load_topology_arg(arg: str):
    # "heavy-hex-127" names the bundled 127-qubit fixture
    if arg == "heavy-hex-127":
        return heavy_hex_127()
    return load_topology(_read(arg, "topology"))


def _parse_levels(text: str) -> tuple[int, ...]:
    try:
        levels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise RuntimeError(f"bad --levels value {text!r}") from None
    if not levels or any(level not in (1, 2, 3) for level in levels):
        raise RuntimeError(f"levels must be a subset of 1,2,3, got {text!r}")
    return levels


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "ingest":
        store = ingest_csv(_read(args.input, "CSV"))
        Path(args.store).write_text(store.to_json(), encoding="utf-8")
    elif args.command == "cluster":
        payload = wire.cluster_payload(_load_store(args.store), args.metric,
                                       args.k, args.distance, args.seed, args.band)
        _write_payload(args.out, payload)
    elif args.command == "bin2d":
        payload = wire.bin2d_payload(_load_store(args.store), args.metric,
                                     args.nx, args.ny, args.t0, args.t1)
        _write_payload(args.out, payload)
    elif args.command == "matrix":
        payload = wire.matrix_payload(_load_store(args.store), args.metric,
                                      args.distance, args.band)
        _write_payload(args.out, payload)
    elif args.command == "transpile":
        topology = _load_topology_arg(args.topology) if args.topology else None
        payload = wire.transpile_payload(_read(args.qasm, "QASM"), topology,
                                         _parse_levels(args.levels))
        _write_payload(args.out, payload)
    elif args.command == "serve":
        serve_app(_load_store(args.store), _load_topology_arg(args.topology),
                  host=args.host, port=args.port, frontend_dir=args.frontend)


DATA_ERRORS = (IngestError, UnknownMetricError, ClusteringError, OptimizerError,
               QasmError, TopologyError, RuntimeError, ValueError, KeyError)


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _dispatch(args)
    except DATA_ERRORS as exc:
        print(f"qubitbench: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
