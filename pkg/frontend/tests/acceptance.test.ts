// Dashboard release criteria, as state-snapshot tests (no pixel assertions).

import { describe, expect, it } from "vitest";

import { UNSELECTED_QUBIT_COLOR, clusterColor } from "../src/palette";
import { applySelection, initialState } from "../src/state";
import { DashboardStore } from "../src/store";
import {
  focusPanelViewModel,
  heatmapViewModel,
  matrixViewModel,
  optimizerViewModel,
  topologyViewModel,
} from "../src/viewmodel";
import { CLUSTER, FakeApiClient, MATRIX, REPORT, SERIES, TOPOLOGY } from "./fakes";

const BASE = initialState("T1", ["2022-01-01", "2022-01-04"]);

describe("linked selection", () => {
  it("select_cluster recolors exactly the member qubits and filters the views", () => {
    const state = applySelection(BASE, { kind: "select_cluster", clusters: [1, 2] }, CLUSTER);

    // topology: members of clusters 1 and 2 get their cluster's color
    const topo = topologyViewModel(TOPOLOGY, CLUSTER, state);
    const recolored = topo.qubits
      .filter((q) => q.color !== UNSELECTED_QUBIT_COLOR)
      .map((q) => q.qubit);
    expect(recolored).toEqual([2, 3, 4, 5]);
    const colorOf = new Map(topo.qubits.map((q) => [q.qubit, q.color]));
    expect(colorOf.get(2)).toBe(clusterColor(1));
    expect(colorOf.get(4)).toBe(clusterColor(2));

    // matrix: displayed rows/columns are exactly the members
    const matrix = matrixViewModel(MATRIX, state);
    expect(matrix.displayedQubits).toEqual([2, 3]); // fixture matrix has qubits 0..3

    // focus line panel: displayed series are exactly the members with data
    const focus = focusPanelViewModel(SERIES, state);
    expect(focus.displayedQubits).toEqual([2, 3, 4, 5]);
  });

  it("brushing issues /api/bin2d with the brushed range and the focus panel adopts it", async () => {
    const api = new FakeApiClient();
    const store = new DashboardStore(api, BASE);
    await store.initialize();
    api.bin2dCalls.length = 0;

    await store.dispatch({ kind: "brush_focus", t0: "2022-01-02", t1: "2022-01-03" });

    expect(api.bin2dCalls).toHaveLength(1);
    expect(api.bin2dCalls[0]).toMatchObject({
      metric: "T1",
      t0: "2022-01-02",
      t1: "2022-01-03",
    });
    const focus = focusPanelViewModel(SERIES, store.state);
    expect(focus.extent).toEqual(["2022-01-02", "2022-01-03"]);
    expect(store.data.focusGrid).not.toBeNull();
  });

  it("heatmap view models derive from the filtered grid the store fetched", async () => {
    const api = new FakeApiClient();
    const store = new DashboardStore(api, BASE);
    await store.initialize();
    api.bin2dCalls.length = 0;
    await store.dispatch({ kind: "select_cluster", clusters: [0] });
    for (const call of api.bin2dCalls) {
      expect(call.qubits).toEqual([0, 1]); // exactly cluster 0's members
    }
    expect(heatmapViewModel(store.data.focusGrid!).cells.length).toBeGreaterThan(0);
  });
});

describe("optimizer tab", () => {
  it("a report with depths [9,7,7] renders three bars with those values", () => {
    const vm = optimizerViewModel(REPORT, 90);
    expect(vm.depthBars).toHaveLength(3);
    expect(vm.depthBars.map((b) => b.value)).toEqual([9, 7, 7]);
    expect(vm.depthBars.map((b) => b.height)).toEqual([90, 70, 70]);
  });

  it("stacked segment heights equal the per-level (single, multi) counts", () => {
    const vm = optimizerViewModel(REPORT, 130);
    const maxGates = Math.max(...REPORT.levels.map((l) => l.single + l.multi));
    for (const [i, level] of REPORT.levels.entries()) {
      const bar = vm.stackedBars[i];
      expect(bar.single).toBe(level.single);
      expect(bar.multi).toBe(level.multi);
      expect(bar.singleHeight).toBeCloseTo((level.single / maxGates) * 130, 10);
      expect(bar.multiHeight).toBeCloseTo((level.multi / maxGates) * 130, 10);
    }
  });
});
