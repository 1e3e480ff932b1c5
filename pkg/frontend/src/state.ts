// Selection state shared by every view, and the pure reducer that applies
// interaction events.  The selected cluster/qubit sets are the single source
// of truth: each view derives its displayed qubits from the same filter.

import type { ClusterResponse } from "./types.js";

export interface ClusterParams {
  k: number;
  distance: "euclidean" | "dtw";
  seed: number;
}

export interface SelectionState {
  metric: string;
  /** Inclusive ISO-date window shown in the focus panels. */
  focusRange: [string, string];
  selectedClusters: number[];   // sorted, unique
  selectedQubits: number[];     // sorted, unique
  clusterParams: ClusterParams;
  optimizerInput: string;
}

export type SelectionEvent =
  | { kind: "select_cluster"; clusters: number[] }
  | { kind: "select_qubit"; qubits: number[] }
  | { kind: "brush_focus"; t0: string; t1: string }
  | { kind: "change_metric"; metric: string }
  | { kind: "set_cluster_params"; params: ClusterParams }
  | { kind: "load_qasm"; qasm: string };

export function initialState(metric: string, span: [string, string]): SelectionState {
  return {
    metric,
    focusRange: span,
    selectedClusters: [],
    selectedQubits: [],
    clusterParams: { k: 6, distance: "euclidean", seed: 0 },
    optimizerInput: "",
  };
}

function sortedUnique(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Qubits belonging to any of the given clusters, per the latest clustering. */
export function clusterMembers(cluster: ClusterResponse, clusterIds: number[]): number[] {
  const wanted = new Set(clusterIds);
  const members = cluster.qubits.filter((_, i) => wanted.has(cluster.assignments[i]));
  return sortedUnique(members);
}

/**
 * Apply one interaction event; returns the new state (inputs untouched).
 * Unknown events are ignored with a console warning.
 */
export function applySelection(
  state: SelectionState,
  event: SelectionEvent,
  cluster: ClusterResponse | null = null,
): SelectionState {
  switch (event.kind) {
    case "select_cluster": {
      const clusters = sortedUnique(event.clusters);
      const qubits = cluster ? clusterMembers(cluster, clusters) : [];
      return { ...state, selectedClusters: clusters, selectedQubits: qubits };
    }
    case "select_qubit":
      return { ...state, selectedQubits: sortedUnique(event.qubits) };
    case "brush_focus": {
      const [t0, t1] = event.t0 <= event.t1 ? [event.t0, event.t1] : [event.t1, event.t0];
      return { ...state, focusRange: [t0, t1] };
    }
    case "change_metric":
      // cluster results no longer apply to the new metric
      return { ...state, metric: event.metric, selectedClusters: [] };
    case "set_cluster_params":
      return { ...state, clusterParams: { ...event.params } };
    case "load_qasm":
      return { ...state, optimizerInput: event.qasm };
    default: {
      console.warn("ignoring unknown selection event", event);
      return state;
    }
  }
}

/**
 * The effective qubit filter every view displays: the explicit selection,
 * or all device qubits when nothing is selected.
 */
export function effectiveQubits(state: SelectionState, allQubits: number[]): number[] {
  return state.selectedQubits.length > 0 ? [...state.selectedQubits] : [...allQubits];
}
