// Wire types for the service API; shapes mirror the service's published
// JSON schemas.

export interface SeriesEntry {
  qubit: number;
  grid: string[];            // ISO dates
  values: (number | null)[];
}

export interface TopologyResponse {
  num_qubits: number;
  edges: [number, number][];
  coords: [number, number][] | null;
}

export interface GridResponse {
  time_edges: number[];      // fractional days since 1970-01-01
  value_edges: number[];
  counts: number[][];        // [time][value]
  medians: (number | null)[][];
}

export interface HistogramResponse {
  metric: string;
  qubit: number;
  edges: number[];
  counts: number[];
}

export interface ClusterResponse {
  k: number;
  metric: { kind: "euclidean" | "dtw"; band: number | null };
  seed: number;
  assignments: number[];
  barycenters: number[][];
  inertia: number;
  iterations: number;
  qubits: number[];
}

export interface MatrixResponse {
  n: number;
  d: number[][];
  qubits: number[];
}

export interface LevelReport {
  level: number;
  depth: number;
  single: number;
  multi: number;
  qasm: string;
}

export interface TranspileResponse {
  input: { depth: number; single: number; multi: number };
  levels: LevelReport[];
  layout: number[] | null;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
  location?: { line: number; column: number };
}

export interface Bin2dRequest {
  metric: string;
  t0?: string;
  t1?: string;
  nx?: number;
  ny?: number;
  qubits?: number[];
}

export interface ClusterRequest {
  metric: string;
  k: number;
  distance: "euclidean" | "dtw";
  seed: number;
  band?: number | null;
}
