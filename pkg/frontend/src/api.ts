// Service client.  Every call goes through the HTTP API; views use
// RequestGate to discard stale responses when requests overlap.

import type {
  ApiErrorBody,
  Bin2dRequest,
  ClusterRequest,
  ClusterResponse,
  GridResponse,
  HistogramResponse,
  MatrixResponse,
  SeriesEntry,
  TopologyResponse,
  TranspileResponse,
} from "./types.js";

export interface ApiClient {
  metrics(): Promise<string[]>;
  series(metric: string): Promise<SeriesEntry[]>;
  topology(): Promise<TopologyResponse>;
  bin2d(request: Bin2dRequest): Promise<GridResponse>;
  cluster(request: ClusterRequest): Promise<ClusterResponse>;
  matrix(metric: string, distance: "euclidean" | "dtw"): Promise<MatrixResponse>;
  histogram(metric: string, qubit: number, bins: number): Promise<HistogramResponse>;
  transpile(qasm: string, useTopology: boolean): Promise<TranspileResponse>;
}

export class ApiError extends Error {
  constructor(readonly body: ApiErrorBody) {
    super(body.message);
  }
}

export class HttpApiClient implements ApiClient {
  constructor(private readonly base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    return this.unwrap<T>(response);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.unwrap<T>(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(payload as ApiErrorBody);
    }
    return payload as T;
  }

  metrics(): Promise<string[]> {
    return this.get("/api/metrics");
  }

  series(metric: string): Promise<SeriesEntry[]> {
    return this.get(`/api/series?metric=${encodeURIComponent(metric)}`);
  }

  topology(): Promise<TopologyResponse> {
    return this.get("/api/topology");
  }

  bin2d(request: Bin2dRequest): Promise<GridResponse> {
    return this.post("/api/bin2d", request);
  }

  cluster(request: ClusterRequest): Promise<ClusterResponse> {
    return this.post("/api/cluster", request);
  }

  matrix(metric: string, distance: "euclidean" | "dtw"): Promise<MatrixResponse> {
    return this.post("/api/matrix", { metric, distance });
  }

  histogram(metric: string, qubit: number, bins: number): Promise<HistogramResponse> {
    return this.post("/api/histogram", { metric, qubit, bins });
  }

  transpile(qasm: string, useTopology: boolean): Promise<TranspileResponse> {
    return this.post("/api/transpile", { qasm, use_topology: useTopology });
  }
}

/**
 * Monotonic request ids per view: a response is delivered only if no newer
 * request for the same view has been issued since (stale ones are dropped).
 */
export class RequestGate {
  private latest = new Map<string, number>();

  async run<T>(view: string, work: () => Promise<T>): Promise<T | undefined> {
    const id = (this.latest.get(view) ?? 0) + 1;
    this.latest.set(view, id);
    const result = await work();
    if (this.latest.get(view) !== id) {
      return undefined; // a newer request superseded this one
    }
    return result;
  }
}
