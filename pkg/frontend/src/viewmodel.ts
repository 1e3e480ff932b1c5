// Pure view models: everything a view displays is computed here from the
// state and API responses, so tests can assert on structure without a DOM.

import { CircuitDiagram, parseCanonicalQasm } from "./circuitDiagram.js";
import {
  BARYCENTER_COLOR,
  MEMBER_LINE_COLOR,
  UNSELECTED_QUBIT_COLOR,
  clusterColor,
  heatmapColor,
  matrixColor,
} from "./palette.js";
import { SelectionState, effectiveQubits } from "./state.js";
import type {
  ClusterResponse,
  GridResponse,
  HistogramResponse,
  MatrixResponse,
  SeriesEntry,
  TopologyResponse,
  TranspileResponse,
} from "./types.js";

// --- heatmaps ---------------------------------------------------------------

export interface HeatmapCellVM {
  i: number;
  j: number;
  x0: number;  // all geometry normalized to [0, 1]
  x1: number;
  y0: number;
  y1: number;
  count: number;
  median: number | null;
  color: string;
  tooltip: string;
}

export interface LegendStopVM {
  t: number;
  count: number;
  color: string;
}

export interface HeatmapVM {
  cells: HeatmapCellVM[];
  maxCount: number;
  timeExtent: [number, number];
  valueExtent: [number, number];
  legend: LegendStopVM[];
}

export function heatmapViewModel(grid: GridResponse): HeatmapVM {
  const te = grid.time_edges;
  const ve = grid.value_edges;
  const tSpan = te[te.length - 1] - te[0];
  const vSpan = ve[ve.length - 1] - ve[0];
  let maxCount = 0;
  for (const row of grid.counts) {
    for (const count of row) {
      maxCount = Math.max(maxCount, count);
    }
  }
  const cells: HeatmapCellVM[] = [];
  for (let i = 0; i < grid.counts.length; i += 1) {
    for (let j = 0; j < grid.counts[i].length; j += 1) {
      const count = grid.counts[i][j];
      const median = grid.medians[i][j];
      cells.push({
        i,
        j,
        x0: (te[i] - te[0]) / tSpan,
        x1: (te[i + 1] - te[0]) / tSpan,
        // value axis grows upward
        y0: 1 - (ve[j + 1] - ve[0]) / vSpan,
        y1: 1 - (ve[j] - ve[0]) / vSpan,
        count,
        median,
        color: count === 0 ? "transparent" : heatmapColor(count / maxCount),
        tooltip: median === null
          ? `qubits: ${count}`
          : `qubits: ${count}\nmedian: ${median.toPrecision(4)}`,
      });
    }
  }
  const stops = 5;
  const legend: LegendStopVM[] = Array.from({ length: stops + 1 }, (_, s) => ({
    t: s / stops,
    count: Math.round((s / stops) * maxCount),
    color: heatmapColor(s / stops),
  }));
  return {
    cells,
    maxCount,
    timeExtent: [te[0], te[te.length - 1]],
    valueExtent: [ve[0], ve[ve.length - 1]],
    legend,
  };
}

// --- focus line panel ---------------------------------------------------------

export interface SeriesLineVM {
  qubit: number;
  points: Array<{ day: string; value: number }>;
}

export interface FocusPanelVM {
  extent: [string, string];
  lines: SeriesLineVM[];
  displayedQubits: number[];
}

export function focusPanelViewModel(
  series: SeriesEntry[],
  state: SelectionState,
): FocusPanelVM {
  const [t0, t1] = state.focusRange;
  const filter = new Set(effectiveQubits(state, series.map((s) => s.qubit)));
  const lines: SeriesLineVM[] = [];
  for (const entry of series) {
    if (!filter.has(entry.qubit)) {
      continue;
    }
    const points: Array<{ day: string; value: number }> = [];
    for (let i = 0; i < entry.grid.length; i += 1) {
      const day = entry.grid[i];
      const value = entry.values[i];
      if (value !== null && day >= t0 && day <= t1) {
        points.push({ day, value });
      }
    }
    lines.push({ qubit: entry.qubit, points });
  }
  return {
    extent: [t0, t1],
    lines,
    displayedQubits: lines.map((l) => l.qubit),
  };
}

// --- topology ------------------------------------------------------------------

export interface TopologyQubitVM {
  qubit: number;
  x: number;
  y: number;
  color: string;
  highlighted: boolean;
}

export interface TopologyVM {
  qubits: TopologyQubitVM[];
  edges: Array<{ a: number; b: number }>;
}

export function topologyViewModel(
  topology: TopologyResponse,
  cluster: ClusterResponse | null,
  state: SelectionState,
): TopologyVM {
  const coords = topology.coords
    ?? Array.from({ length: topology.num_qubits },
                  (_, i) => [i % 16, Math.floor(i / 16)] as [number, number]);
  const selectedClusters = new Set(state.selectedClusters);
  const assignmentOf = new Map<number, number>();
  if (cluster) {
    cluster.qubits.forEach((q, i) => assignmentOf.set(q, cluster.assignments[i]));
  }
  const qubits = coords.map(([x, y], q) => {
    const assigned = assignmentOf.get(q);
    const member = assigned !== undefined && selectedClusters.has(assigned);
    return {
      qubit: q,
      x,
      y,
      color: member ? clusterColor(assigned as number) : UNSELECTED_QUBIT_COLOR,
      highlighted: member || state.selectedQubits.includes(q),
    };
  });
  return { qubits, edges: topology.edges.map(([a, b]) => ({ a, b })) };
}

// --- cluster small multiples ------------------------------------------------------

export interface ClusterPanelVM {
  clusterId: number;
  titleColor: string;
  selected: boolean;
  memberQubits: number[];
  memberLines: Array<{ qubit: number; values: (number | null)[]; color: string }>;
  barycenter: { values: number[]; color: string };
}

export function clusterViewModel(
  cluster: ClusterResponse,
  series: SeriesEntry[],
  state: SelectionState,
): ClusterPanelVM[] {
  const filter = new Set(effectiveQubits(state, cluster.qubits));
  const byQubit = new Map(series.map((s) => [s.qubit, s]));
  const panels: ClusterPanelVM[] = [];
  for (let c = 0; c < cluster.k; c += 1) {
    const members = cluster.qubits.filter(
      (q, i) => cluster.assignments[i] === c && filter.has(q));
    panels.push({
      clusterId: c,
      titleColor: clusterColor(c),
      selected: state.selectedClusters.includes(c),
      memberQubits: members,
      memberLines: members.map((q) => ({
        qubit: q,
        values: byQubit.get(q)?.values ?? [],
        color: MEMBER_LINE_COLOR,
      })),
      barycenter: { values: cluster.barycenters[c], color: BARYCENTER_COLOR },
    });
  }
  return panels;
}

// --- distance matrix -----------------------------------------------------------

export interface MatrixCellVM {
  row: number;     // qubit ids
  col: number;
  value: number;
  color: string;
}

export interface MatrixVM {
  displayedQubits: number[];
  maxDistance: number;
  cells: MatrixCellVM[];
}

export function matrixViewModel(
  matrix: MatrixResponse,
  state: SelectionState,
): MatrixVM {
  const filter = new Set(effectiveQubits(state, matrix.qubits));
  const kept = matrix.qubits
    .map((q, i) => ({ q, i }))
    .filter(({ q }) => filter.has(q));
  let maxDistance = 0;
  for (const { i } of kept) {
    for (const { i: j } of kept) {
      maxDistance = Math.max(maxDistance, matrix.d[i][j]);
    }
  }
  const cells: MatrixCellVM[] = [];
  for (const { q: rowQ, i } of kept) {
    for (const { q: colQ, i: j } of kept) {
      const value = matrix.d[i][j];
      cells.push({
        row: rowQ,
        col: colQ,
        value,
        color: matrixColor(maxDistance === 0 ? 0 : value / maxDistance),
      });
    }
  }
  return { displayedQubits: kept.map(({ q }) => q), maxDistance, cells };
}

// --- metric distribution -----------------------------------------------------------

export interface HistogramBarVM {
  x0: number;
  x1: number;
  count: number;
  height: number;  // normalized to the tallest bar
}

export function histogramViewModel(hist: HistogramResponse): HistogramBarVM[] {
  const maxCount = Math.max(1, ...hist.counts);
  return hist.counts.map((count, i) => ({
    x0: hist.edges[i],
    x1: hist.edges[i + 1],
    count,
    height: count / maxCount,
  }));
}

// --- optimizer tab ---------------------------------------------------------------

export interface DepthBarVM {
  level: number;
  value: number;
  height: number;  // pixels within chartHeight
}

export interface StackedBarVM {
  level: number;
  single: number;
  multi: number;
  singleHeight: number;
  multiHeight: number;
}

export interface OptimizerVM {
  inputDepth: number;
  depthBars: DepthBarVM[];
  stackedBars: StackedBarVM[];
  diagrams: Array<{ level: number; diagram: CircuitDiagram }>;
}

export function optimizerViewModel(
  report: TranspileResponse,
  chartHeight = 120,
): OptimizerVM {
  const maxDepth = Math.max(1, ...report.levels.map((l) => l.depth));
  const maxGates = Math.max(1, ...report.levels.map((l) => l.single + l.multi));
  return {
    inputDepth: report.input.depth,
    depthBars: report.levels.map((l) => ({
      level: l.level,
      value: l.depth,
      height: (l.depth / maxDepth) * chartHeight,
    })),
    stackedBars: report.levels.map((l) => ({
      level: l.level,
      single: l.single,
      multi: l.multi,
      singleHeight: (l.single / maxGates) * chartHeight,
      multiHeight: (l.multi / maxGates) * chartHeight,
    })),
    diagrams: report.levels.map((l) => ({
      level: l.level,
      diagram: parseCanonicalQasm(l.qasm),
    })),
  };
}
