// Dashboard store: holds the selection state plus the latest API responses,
// applies events through the pure reducer, and re-queries the views that
// depend on what changed.  Stale responses are dropped via RequestGate.

import { ApiClient, RequestGate } from "./api.js";
import {
  SelectionEvent,
  SelectionState,
  applySelection,
  effectiveQubits,
} from "./state.js";
import type {
  ClusterResponse,
  GridResponse,
  MatrixResponse,
  SeriesEntry,
  TopologyResponse,
  TranspileResponse,
} from "./types.js";

export interface DashboardData {
  metrics: string[];
  topology: TopologyResponse | null;
  series: SeriesEntry[];
  contextGrid: GridResponse | null;
  focusGrid: GridResponse | null;
  cluster: ClusterResponse | null;
  matrix: MatrixResponse | null;
  report: TranspileResponse | null;
  lastError: string | null;
}

export class DashboardStore {
  state: SelectionState;
  data: DashboardData = {
    metrics: [],
    topology: null,
    series: [],
    contextGrid: null,
    focusGrid: null,
    cluster: null,
    matrix: null,
    report: null,
    lastError: null,
  };

  private readonly gate = new RequestGate();
  private readonly listeners: Array<() => void> = [];

  constructor(private readonly api: ApiClient, initial: SelectionState) {
    this.state = initial;
  }

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  /** Qubit filter sent with grid queries; undefined means "all qubits". */
  private filterForRequests(): number[] | undefined {
    return this.state.selectedQubits.length > 0
      ? [...this.state.selectedQubits]
      : undefined;
  }

  async initialize(): Promise<void> {
    this.data.metrics = await this.api.metrics();
    this.data.topology = await this.api.topology();
    if (!this.data.metrics.includes(this.state.metric)) {
      // fall back to the first served metric before any data queries run
      this.state = { ...this.state, metric: this.data.metrics[0] ?? "" };
    }
    await this.reloadMetricData();
  }

  async dispatch(event: SelectionEvent): Promise<void> {
    this.state = applySelection(this.state, event, this.data.cluster);
    try {
      switch (event.kind) {
        case "brush_focus":
          await this.refreshFocusGrid();
          break;
        case "select_cluster":
        case "select_qubit":
          await Promise.all([this.refreshFocusGrid(), this.refreshContextGrid()]);
          break;
        case "change_metric":
          await this.reloadMetricData();
          break;
        case "set_cluster_params":
          await this.refreshCluster();
          break;
        case "load_qasm":
          await this.refreshReport();
          break;
      }
      this.data.lastError = null;
    } catch (error) {
      this.data.lastError = String(error);
    }
    this.notify();
  }

  private async reloadMetricData(): Promise<void> {
    const metric = this.state.metric;
    const series = await this.gate.run("series", () => this.api.series(metric));
    if (series !== undefined) {
      this.data.series = series;
      const span = seriesSpan(series);
      if (span) {
        this.state = { ...this.state, focusRange: span };
      }
    }
    this.data.cluster = null;
    await Promise.all([
      this.refreshContextGrid(),
      this.refreshFocusGrid(),
      this.refreshCluster(),
      this.refreshMatrix(),
    ]);
  }

  private async refreshContextGrid(): Promise<void> {
    const grid = await this.gate.run("context", () =>
      this.api.bin2d({ metric: this.state.metric, qubits: this.filterForRequests() }));
    if (grid !== undefined) {
      this.data.contextGrid = grid;
    }
  }

  private async refreshFocusGrid(): Promise<void> {
    const [t0, t1] = this.state.focusRange;
    const grid = await this.gate.run("focus", () =>
      this.api.bin2d({
        metric: this.state.metric,
        t0,
        t1,
        qubits: this.filterForRequests(),
      }));
    if (grid !== undefined) {
      this.data.focusGrid = grid;
    }
  }

  private async refreshCluster(): Promise<void> {
    const { k, distance, seed } = this.state.clusterParams;
    const cluster = await this.gate.run("cluster", () =>
      this.api.cluster({ metric: this.state.metric, k, distance, seed }));
    if (cluster !== undefined) {
      this.data.cluster = cluster;
    }
  }

  private async refreshMatrix(): Promise<void> {
    const matrix = await this.gate.run("matrix", () =>
      this.api.matrix(this.state.metric, this.state.clusterParams.distance));
    if (matrix !== undefined) {
      this.data.matrix = matrix;
    }
  }

  private async refreshReport(): Promise<void> {
    if (!this.state.optimizerInput) {
      this.data.report = null;
      return;
    }
    const report = await this.gate.run("report", () =>
      this.api.transpile(this.state.optimizerInput, false));
    if (report !== undefined) {
      this.data.report = report;
    }
  }

  /** The qubit set every view must display. */
  displayedQubits(): number[] {
    const all = this.data.topology
      ? Array.from({ length: this.data.topology.num_qubits }, (_, i) => i)
      : this.data.series.map((s) => s.qubit);
    return effectiveQubits(this.state, all);
  }
}

export function seriesSpan(series: SeriesEntry[]): [string, string] | null {
  let lo: string | null = null;
  let hi: string | null = null;
  for (const entry of series) {
    for (let i = 0; i < entry.grid.length; i += 1) {
      if (entry.values[i] === null) {
        continue;
      }
      const day = entry.grid[i];
      if (lo === null || day < lo) {
        lo = day;
      }
      if (hi === null || day > hi) {
        hi = day;
      }
    }
  }
  return lo !== null && hi !== null ? [lo, hi] : null;
}
