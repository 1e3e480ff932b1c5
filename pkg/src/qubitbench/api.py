"""HTTP service exposing the engine to the dashboard and to scripts.

Responses are pure functions of (store, topology, request); cluster requests
carry explicit seeds, so identical bodies produce byte-identical bodies.
Errors follow {status, code, message, location?} with 4xx for caller faults.
"""

from __future__ import annotations

from datetime import date

from fastapi import FastAPI, Response
from fastapi.exceptions import RequestValidationError
from pydantic import BaseModel, Field

from . import wire
from .clustering import ClusteringError
from .device_data import DataStore, UnknownMetricError
from .optimizer import OptimizerError
from .qasm import QasmError
from .topology import DeviceTopology


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 location: tuple[int, int] | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.location = location

    def payload(self) -> dict:
        body: dict = {"status": self.status, "code": self.code, "message": self.message}
        if self.location is not None:
            body["location"] = {"line": self.location[0], "column": self.location[1]}
        return body


class Bin2dRequest(BaseModel):
    metric: str
    t0: date | None = None
    t1: date | None = None
    nx: int | None = Field(default=None, ge=1)  # None -> min(#days, 128)
    ny: int | None = Field(default=None, ge=1)  # None -> 32
    qubits: list[int] | None = None  # None -> every qubit
    include_members: bool = False


class ClusterRequest(BaseModel):
    metric: str
    k: int = Field(ge=1)
    distance: str
    seed: int
    band: int | None = None


class MatrixRequest(BaseModel):
    metric: str
    distance: str
    band: int | None = None


class HistogramRequest(BaseModel):
    metric: str
    qubit: int = Field(ge=0)
    bins: int = Field(ge=1)


class TranspileRequest(BaseModel):
    qasm: str
    use_topology: bool = False


def _json(payload) -> Response:
    return Response(content=wire.dumps_canonical(payload),
                    media_type="application/json")


def create_app(store: DataStore, topology: DeviceTopology,
               frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="qubitbench", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def on_api_error(_request, exc: ApiError):
        return Response(content=wire.dumps_canonical(exc.payload()),
                        status_code=exc.status, media_type="application/json")

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_request, exc: RequestValidationError):
        err = ApiError(400, "bad_request", str(exc.errors()[0].get("msg", "invalid request")))
        return Response(content=wire.dumps_canonical(err.payload()),
                        status_code=400, media_type="application/json")

    @app.exception_handler(Exception)
    async def on_engine_fault(_request, exc: Exception):
        err = ApiError(500, "internal_error", f"{type(exc).__name__}: {exc}")
        return Response(content=wire.dumps_canonical(err.payload()),
                        status_code=500, media_type="application/json")

    def run(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except QasmError as exc:
            raise ApiError(400, "bad_qasm", exc.message,
                           (exc.line, exc.column)) from exc
        except UnknownMetricError as exc:
            raise ApiError(404, "unknown_metric", str(exc)) from exc
        except (ClusteringError, OptimizerError, ValueError) as exc:
            raise ApiError(400, "invalid_parameter", str(exc)) from exc

    @app.get("/api/metrics")
    def get_metrics():
        return _json(run(wire.metrics_payload, store))

    @app.get("/api/series")
    def get_series(metric: str):
        return _json(run(wire.series_payload, store, metric))

    @app.get("/api/topology")
    def get_topology():
        return _json(topology.to_payload())

    @app.post("/api/bin2d")
    def post_bin2d(req: Bin2dRequest):
        return _json(run(wire.bin2d_payload, store, req.metric, req.nx, req.ny,
                         req.t0, req.t1, req.qubits, req.include_members))

    @app.post("/api/cluster")
    def post_cluster(req: ClusterRequest):
        return _json(run(wire.cluster_payload, store, req.metric, req.k,
                         req.distance, req.seed, req.band))

    @app.post("/api/matrix")
    def post_matrix(req: MatrixRequest):
        return _json(run(wire.matrix_payload, store, req.metric, req.distance,
                         req.band))

    @app.post("/api/histogram")
    def post_histogram(req: HistogramRequest):
        return _json(run(wire.histogram_payload, store, req.metric, req.qubit,
                         req.bins))

    @app.post("/api/transpile")
    def post_transpile(req: TranspileRequest):
        topo = topology if req.use_topology else None
        return _json(run(wire.transpile_payload, req.qasm, topo))

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        # mounted last so /api/* keeps precedence
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="dashboard")

    return app


def serve(store: DataStore, topology: DeviceTopology,
          host: str = "127.0.0.1", port: int = 8000,
          frontend_dir: str | None = None) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(store, topology, frontend_dir), host=host, port=port)
