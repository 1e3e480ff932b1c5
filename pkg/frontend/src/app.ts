// Entry point: builds the store against the live service, wires the two tabs
// (qubit exploration and optimizer), and re-renders on every state change.

import { HttpApiClient } from "./api.js";
import { initialState } from "./state.js";
import { DashboardStore } from "./store.js";
import {
  clusterViewModel,
  focusPanelViewModel,
  heatmapViewModel,
  histogramViewModel,
  matrixViewModel,
  optimizerViewModel,
  topologyViewModel,
} from "./viewmodel.js";
import {
  guarded,
  renderClusters,
  renderErrorPanel,
  renderFocusPanel,
  renderHeatmap,
  renderHistogram,
  renderMatrix,
  renderOptimizer,
  renderTopology,
} from "./render.js";

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing container #${id}`);
  }
  return el;
}

function isoFromFraction(extent: [number, number], fraction: number): string {
  const epochDay = extent[0] + (extent[1] - extent[0]) * fraction;
  // the right edge is exclusive: the last day starts one unit before it
  const day = Math.min(Math.floor(epochDay), Math.ceil(extent[1]) - 1);
  return new Date(day * 86400000).toISOString().slice(0, 10);
}

async function start(): Promise<void> {
  const api = new HttpApiClient("");
  const store = new DashboardStore(api, initialState("", ["", ""]));

  const metricSelect = byId("metric-select") as HTMLSelectElement;
  const kInput = byId("cluster-k") as HTMLInputElement;
  const distanceSelect = byId("cluster-distance") as HTMLSelectElement;
  const seedInput = byId("cluster-seed") as HTMLInputElement;
  const qasmInput = byId("qasm-input") as HTMLTextAreaElement;

  const render = (): void => {
    const { data, state } = store;
    if (data.lastError) {
      renderErrorPanel(byId("status"), data.lastError);
    } else {
      byId("status").textContent =
        `metric: ${state.metric} | focus ${state.focusRange[0]} .. ${state.focusRange[1]}`;
    }
    guarded(byId("view-topology"), () => {
      if (data.topology) {
        renderTopology(
          byId("view-topology"),
          topologyViewModel(data.topology, data.cluster, state),
          (qubit) => {
            const current = new Set(state.selectedQubits);
            if (current.has(qubit)) {
              current.delete(qubit);
            } else {
              current.add(qubit);
            }
            void store.dispatch({ kind: "select_qubit", qubits: [...current] });
          },
        );
      }
    });
    guarded(byId("view-context"), () => {
      if (data.contextGrid) {
        const vm = heatmapViewModel(data.contextGrid);
        renderHeatmap(byId("view-context"), vm, {
          onBrush: (f0, f1) => {
            void store.dispatch({
              kind: "brush_focus",
              t0: isoFromFraction(vm.timeExtent, f0),
              t1: isoFromFraction(vm.timeExtent, f1),
            });
          },
        });
      }
    });
    guarded(byId("view-focus"), () => {
      if (data.focusGrid) {
        renderHeatmap(byId("view-focus"), heatmapViewModel(data.focusGrid));
      }
    });
    guarded(byId("view-focus-lines"), () => {
      renderFocusPanel(byId("view-focus-lines"),
                       focusPanelViewModel(data.series, state));
    });
    guarded(byId("view-clusters"), () => {
      if (data.cluster) {
        renderClusters(
          byId("view-clusters"),
          clusterViewModel(data.cluster, data.series, state),
          (clusterId) => {
            const current = new Set(state.selectedClusters);
            if (current.has(clusterId)) {
              current.delete(clusterId);
            } else {
              current.add(clusterId);
            }
            void store.dispatch({ kind: "select_cluster", clusters: [...current] });
          },
        );
      }
    });
    guarded(byId("view-matrix"), () => {
      if (data.matrix) {
        renderMatrix(byId("view-matrix"), matrixViewModel(data.matrix, state));
      }
    });
    guarded(byId("view-distribution"), () => {
      const first = state.selectedQubits[0] ?? data.series[0]?.qubit;
      if (first !== undefined) {
        void api.histogram(state.metric, first, 24).then((hist) => {
          renderHistogram(byId("view-distribution"), histogramViewModel(hist));
        });
      }
    });
    guarded(byId("view-optimizer"), () => {
      if (data.report) {
        renderOptimizer(byId("view-optimizer"), optimizerViewModel(data.report));
      }
    });
  };

  store.subscribe(render);
  await store.initialize();

  for (const metric of store.data.metrics) {
    const option = document.createElement("option");
    option.value = metric;
    option.textContent = metric;
    metricSelect.appendChild(option);
  }
  metricSelect.value = store.state.metric;
  render();

  metricSelect.addEventListener("change", () => {
    void store.dispatch({ kind: "change_metric", metric: metricSelect.value });
  });
  const pushParams = (): void => {
    void store.dispatch({
      kind: "set_cluster_params",
      params: {
        k: parseInt(kInput.value, 10) || 6,
        distance: distanceSelect.value === "dtw" ? "dtw" : "euclidean",
        seed: parseInt(seedInput.value, 10) || 0,
      },
    });
  };
  kInput.addEventListener("change", pushParams);
  distanceSelect.addEventListener("change", pushParams);
  seedInput.addEventListener("change", pushParams);
  byId("qasm-run").addEventListener("click", () => {
    void store.dispatch({ kind: "load_qasm", qasm: qasmInput.value });
  });
  byId("clear-selection").addEventListener("click", () => {
    void store.dispatch({ kind: "select_cluster", clusters: [] });
  });

  for (const tab of ["explore", "optimizer"]) {
    byId(`tab-${tab}`).addEventListener("click", () => {
      byId("page-explore").style.display = tab === "explore" ? "grid" : "none";
      byId("page-optimizer").style.display = tab === "optimizer" ? "block" : "none";
    });
  }
}

void start().catch((error) => {
  const status = document.getElementById("status");
  if (status) {
    renderErrorPanel(status, String(error));
  }
});
