// SVG rendering of the view models.  All layout math lives in viewmodel.ts;
// this module only materializes DOM nodes and hooks up interactions.

import { CircuitDiagram, gateLabel } from "./circuitDiagram.js";
import type {
  ClusterPanelVM,
  FocusPanelVM,
  HeatmapVM,
  HistogramBarVM,
  MatrixVM,
  OptimizerVM,
  TopologyVM,
} from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

function clear(el: Element): void {
  while (el.firstChild) {
    el.removeChild(el.firstChild);
  }
}

export function renderErrorPanel(host: HTMLElement, message: string): void {
  clear(host);
  const panel = document.createElement("div");
  panel.className = "error-panel";
  panel.textContent = `view failed to render: ${message}`;
  host.appendChild(panel);
}

/** Wraps a renderer so schema surprises show an error panel, never a blank view. */
export function guarded(host: HTMLElement, render: () => void): void {
  try {
    render();
  } catch (error) {
    renderErrorPanel(host, error instanceof Error ? error.message : String(error));
  }
}

// --- topology -----------------------------------------------------------------

export function renderTopology(
  host: HTMLElement,
  vm: TopologyVM,
  onToggleQubit: (qubit: number) => void,
): void {
  clear(host);
  const xs = vm.qubits.map((q) => q.x);
  const ys = vm.qubits.map((q) => q.y);
  const pad = 1;
  const minX = Math.min(...xs) - pad;
  const maxX = Math.max(...xs) + pad;
  const minY = Math.min(...ys) - pad;
  const maxY = Math.max(...ys) + pad;
  const svg = svgEl("svg", {
    viewBox: `${minX} ${minY} ${maxX - minX} ${maxY - minY}`,
    class: "topology-svg",
  });
  const byId = new Map(vm.qubits.map((q) => [q.qubit, q]));
  for (const edge of vm.edges) {
    const a = byId.get(edge.a);
    const b = byId.get(edge.b);
    if (!a || !b) {
      continue;
    }
    svg.appendChild(svgEl("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      stroke: "#999", "stroke-width": 0.08,
    }));
  }
  for (const q of vm.qubits) {
    const circle = svgEl("circle", {
      cx: q.x, cy: q.y, r: 0.38,
      fill: q.color,
      stroke: q.highlighted ? "#000" : "#777",
      "stroke-width": q.highlighted ? 0.1 : 0.04,
      class: "topology-qubit",
    });
    circle.addEventListener("click", () => onToggleQubit(q.qubit));
    const title = svgEl("title");
    title.textContent = `qubit ${q.qubit}`;
    circle.appendChild(title);
    svg.appendChild(circle);
  }
  host.appendChild(svg);
}

// --- heatmaps -----------------------------------------------------------------

export interface BrushCallbacks {
  onBrush: (fraction0: number, fraction1: number) => void;
}

export function renderHeatmap(
  host: HTMLElement,
  vm: HeatmapVM,
  brush: BrushCallbacks | null = null,
): void {
  clear(host);
  const width = 640;
  const height = 180;
  const legendWidth = 46;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width + legendWidth} ${height}`,
    class: "heatmap-svg",
  });
  const tooltip = ensureTooltip();
  for (const cell of vm.cells) {
    if (cell.count === 0) {
      continue;
    }
    const rect = svgEl("rect", {
      x: cell.x0 * width,
      y: cell.y0 * height,
      width: Math.max(0.5, (cell.x1 - cell.x0) * width),
      height: Math.max(0.5, (cell.y1 - cell.y0) * height),
      fill: cell.color,
    });
    rect.addEventListener("mousemove", (ev) => {
      tooltip.style.display = "block";
      tooltip.style.left = `${ev.pageX + 12}px`;
      tooltip.style.top = `${ev.pageY + 12}px`;
      tooltip.textContent = cell.tooltip;
    });
    rect.addEventListener("mouseleave", () => {
      tooltip.style.display = "none";
    });
    svg.appendChild(rect);
  }
  // color legend on the right side of the panel
  const stops = vm.legend;
  const stopHeight = height / stops.length;
  stops.forEach((stop, i) => {
    svg.appendChild(svgEl("rect", {
      x: width + 8,
      y: height - (i + 1) * stopHeight,
      width: 12,
      height: stopHeight,
      fill: stop.color,
    }));
    const label = svgEl("text", {
      x: width + 24,
      y: height - i * stopHeight - stopHeight / 2 + 3,
      "font-size": 9,
    });
    label.textContent = String(stop.count);
    svg.appendChild(label);
  });
  if (brush) {
    attachBrush(svg, width, height, brush);
  }
  host.appendChild(svg);
}

function attachBrush(svg: SVGSVGElement, width: number, height: number,
                     brush: BrushCallbacks): void {
  const overlay = svgEl("rect", {
    x: 0, y: 0, width, height,
    fill: "transparent", cursor: "crosshair",
  });
  const marker = svgEl("rect", {
    x: 0, y: 0, width: 0, height,
    fill: "rgba(120,120,120,0.25)", stroke: "#555", "stroke-width": 0.5,
  });
  svg.appendChild(marker);
  svg.appendChild(overlay);
  let start: number | null = null;

  const toFraction = (ev: MouseEvent): number => {
    const box = svg.getBoundingClientRect();
    const scaled = ((ev.clientX - box.left) / box.width) * (width + 46);
    return Math.max(0, Math.min(1, scaled / width));
  };
  overlay.addEventListener("mousedown", (ev) => {
    start = toFraction(ev);
  });
  overlay.addEventListener("mousemove", (ev) => {
    if (start === null) {
      return;
    }
    const now = toFraction(ev);
    const lo = Math.min(start, now);
    const hi = Math.max(start, now);
    marker.setAttribute("x", String(lo * width));
    marker.setAttribute("width", String((hi - lo) * width));
  });
  overlay.addEventListener("mouseup", (ev) => {
    if (start === null) {
      return;
    }
    const end = toFraction(ev);
    const lo = Math.min(start, end);
    const hi = Math.max(start, end);
    start = null;
    brush.onBrush(lo, hi);
  });
}

let tooltipDiv: HTMLDivElement | null = null;

function ensureTooltip(): HTMLDivElement {
  if (!tooltipDiv) {
    tooltipDiv = document.createElement("div");
    tooltipDiv.className = "tooltip";
    tooltipDiv.style.display = "none";
    document.body.appendChild(tooltipDiv);
  }
  return tooltipDiv;
}

// --- focus line panel ------------------------------------------------------------

export function renderFocusPanel(host: HTMLElement, vm: FocusPanelVM): void {
  clear(host);
  const width = 640;
  const height = 120;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, class: "focus-svg" });
  const values = vm.lines.flatMap((l) => l.points.map((p) => p.value));
  if (values.length === 0) {
    host.appendChild(svg);
    return;
  }
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const vSpan = hi - lo || 1;
  const t0 = Date.parse(vm.extent[0]);
  const t1 = Date.parse(vm.extent[1]) + 86400000;
  const tSpan = t1 - t0 || 1;
  for (const line of vm.lines) {
    if (line.points.length === 0) {
      continue;
    }
    const d = line.points
      .map((p, i) => {
        const x = ((Date.parse(p.day) - t0) / tSpan) * width;
        const y = height - ((p.value - lo) / vSpan) * height;
        return `${i === 0 ? "M" : "L"}${x.toFixed(1)},${y.toFixed(1)}`;
      })
      .join(" ");
    svg.appendChild(svgEl("path", {
      d, fill: "none", stroke: "rgba(70,70,160,0.45)", "stroke-width": 0.8,
    }));
  }
  host.appendChild(svg);
}

// --- cluster small multiples -------------------------------------------------------

export function renderClusters(
  host: HTMLElement,
  panels: ClusterPanelVM[],
  onToggleCluster: (clusterId: number) => void,
): void {
  clear(host);
  for (const panel of panels) {
    const box = document.createElement("div");
    box.className = panel.selected ? "cluster-panel selected" : "cluster-panel";
    const title = document.createElement("div");
    title.className = "cluster-title";
    title.style.color = panel.titleColor;
    title.textContent = `cluster ${panel.clusterId} (${panel.memberQubits.length})`;
    title.addEventListener("click", () => onToggleCluster(panel.clusterId));
    box.appendChild(title);

    const width = 200;
    const height = 80;
    const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}` });
    const all = panel.memberLines
      .flatMap((l) => l.values.filter((v): v is number => v !== null))
      .concat(panel.barycenter.values);
    const lo = Math.min(...all);
    const hi = Math.max(...all);
    const span = hi - lo || 1;
    const toPath = (values: (number | null)[]): string =>
      values
        .map((v, i) => {
          if (v === null) {
            return "";
          }
          const x = (i / Math.max(1, values.length - 1)) * width;
          const y = height - ((v - lo) / span) * height;
          return `${x.toFixed(1)},${y.toFixed(1)}`;
        })
        .filter(Boolean)
        .map((p, i) => (i === 0 ? `M${p}` : `L${p}`))
        .join(" ");
    for (const line of panel.memberLines) {
      svg.appendChild(svgEl("path", {
        d: toPath(line.values), fill: "none",
        stroke: line.color, "stroke-width": 0.7,
      }));
    }
    svg.appendChild(svgEl("path", {
      d: toPath(panel.barycenter.values), fill: "none",
      stroke: panel.barycenter.color, "stroke-width": 1.6,
    }));
    box.appendChild(svg);
    host.appendChild(box);
  }
}

// --- distance matrix ---------------------------------------------------------------

export function renderMatrix(host: HTMLElement, vm: MatrixVM): void {
  clear(host);
  const n = vm.displayedQubits.length;
  if (n === 0) {
    renderErrorPanel(host, "no qubits selected");
    return;
  }
  const size = 320;
  const cell = size / n;
  const svg = svgEl("svg", { viewBox: `0 0 ${size} ${size}`, class: "matrix-svg" });
  const index = new Map(vm.displayedQubits.map((q, i) => [q, i]));
  const tooltip = ensureTooltip();
  for (const c of vm.cells) {
    const rect = svgEl("rect", {
      x: (index.get(c.col) ?? 0) * cell,
      y: (index.get(c.row) ?? 0) * cell,
      width: cell,
      height: cell,
      fill: c.color,
    });
    rect.addEventListener("mousemove", (ev) => {
      tooltip.style.display = "block";
      tooltip.style.left = `${ev.pageX + 12}px`;
      tooltip.style.top = `${ev.pageY + 12}px`;
      tooltip.textContent = `q${c.row} vs q${c.col}: ${c.value.toPrecision(4)}`;
    });
    rect.addEventListener("mouseleave", () => {
      tooltip.style.display = "none";
    });
    svg.appendChild(rect);
  }
  host.appendChild(svg);
}

// --- metric distribution --------------------------------------------------------------

export function renderHistogram(host: HTMLElement, bars: HistogramBarVM[]): void {
  clear(host);
  const width = 320;
  const height = 140;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}` });
  const lo = bars[0]?.x0 ?? 0;
  const hi = bars[bars.length - 1]?.x1 ?? 1;
  const span = hi - lo || 1;
  for (const bar of bars) {
    svg.appendChild(svgEl("rect", {
      x: ((bar.x0 - lo) / span) * width,
      y: height - bar.height * (height - 10),
      width: Math.max(1, ((bar.x1 - bar.x0) / span) * width - 1),
      height: bar.height * (height - 10),
      fill: "#4d7fb5",
    }));
  }
  host.appendChild(svg);
}

// --- optimizer tab ----------------------------------------------------------------------

export function renderOptimizer(host: HTMLElement, vm: OptimizerVM): void {
  clear(host);
  const charts = document.createElement("div");
  charts.className = "optimizer-charts";
  charts.appendChild(renderDepthBars(vm));
  charts.appendChild(renderStackedBars(vm));
  host.appendChild(charts);
  for (const { level, diagram } of vm.diagrams) {
    const caption = document.createElement("div");
    caption.className = "diagram-caption";
    caption.textContent = `optimized circuit, level ${level}`;
    host.appendChild(caption);
    host.appendChild(renderDiagram(diagram));
  }
}

function renderDepthBars(vm: OptimizerVM): HTMLElement {
  const box = document.createElement("div");
  box.className = "chart";
  const width = 180;
  const height = 140;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}` });
  const barWidth = width / (vm.depthBars.length * 2);
  vm.depthBars.forEach((bar, i) => {
    const x = barWidth / 2 + i * 2 * barWidth;
    svg.appendChild(svgEl("rect", {
      x, y: height - 16 - bar.height, width: barWidth, height: bar.height,
      fill: "#4d7fb5", "data-level": bar.level, "data-depth": bar.value,
    }));
    const label = svgEl("text", { x: x + barWidth / 2, y: height - 4,
                                  "text-anchor": "middle", "font-size": 10 });
    label.textContent = `L${bar.level}: ${bar.value}`;
    svg.appendChild(label);
  });
  box.appendChild(title("circuit depth"));
  box.appendChild(svg);
  return box;
}

function renderStackedBars(vm: OptimizerVM): HTMLElement {
  const box = document.createElement("div");
  box.className = "chart";
  const width = 180;
  const height = 140;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}` });
  const barWidth = width / (vm.stackedBars.length * 2);
  vm.stackedBars.forEach((bar, i) => {
    const x = barWidth / 2 + i * 2 * barWidth;
    svg.appendChild(svgEl("rect", {
      x, y: height - 16 - bar.singleHeight, width: barWidth,
      height: bar.singleHeight, fill: "#74a9cf",
      "data-level": bar.level, "data-single": bar.single,
    }));
    svg.appendChild(svgEl("rect", {
      x, y: height - 16 - bar.singleHeight - bar.multiHeight, width: barWidth,
      height: bar.multiHeight, fill: "#de6f57",
      "data-level": bar.level, "data-multi": bar.multi,
    }));
    const label = svgEl("text", { x: x + barWidth / 2, y: height - 4,
                                  "text-anchor": "middle", "font-size": 10 });
    label.textContent = `L${bar.level}: ${bar.single}+${bar.multi}`;
    svg.appendChild(label);
  });
  box.appendChild(title("gates: single + multi"));
  box.appendChild(svg);
  return box;
}

function title(text: string): HTMLElement {
  const el = document.createElement("div");
  el.className = "chart-title";
  el.textContent = text;
  return el;
}

function renderDiagram(diagram: CircuitDiagram): HTMLElement {
  const box = document.createElement("div");
  box.className = "circuit-diagram";
  const colWidth = 44;
  const rowHeight = 30;
  const left = 36;
  const width = left + (diagram.columns + 1) * colWidth;
  const height = (diagram.numQubits + 0.5) * rowHeight;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}` });
  for (let q = 0; q < diagram.numQubits; q += 1) {
    const y = (q + 0.75) * rowHeight;
    svg.appendChild(svgEl("line", {
      x1: left, y1: y, x2: width - 6, y2: y, stroke: "#888", "stroke-width": 1,
    }));
    const label = svgEl("text", { x: 4, y: y + 4, "font-size": 11 });
    label.textContent = `q${q}`;
    svg.appendChild(label);
  }
  for (const op of diagram.ops) {
    const x = left + (op.column - 0.5) * colWidth;
    const ys = op.qubits.map((q) => (q + 0.75) * rowHeight);
    if (op.name === "barrier") {
      for (const y of ys) {
        svg.appendChild(svgEl("line", {
          x1: x, y1: y - rowHeight / 2, x2: x, y2: y + rowHeight / 2,
          stroke: "#aaa", "stroke-dasharray": "3,2", "stroke-width": 1.5,
        }));
      }
      continue;
    }
    if (op.name === "cx" && op.qubits.length === 2) {
      const [cy, ty] = ys;
      svg.appendChild(svgEl("line", {
        x1: x, y1: cy, x2: x, y2: ty, stroke: "#333", "stroke-width": 1.5,
      }));
      svg.appendChild(svgEl("circle", { cx: x, cy, r: 3.5, fill: "#333" }));
      svg.appendChild(svgEl("circle", {
        cx: x, cy: ty, r: 8, fill: "none", stroke: "#333", "stroke-width": 1.5,
      }));
      svg.appendChild(svgEl("line", {
        x1: x - 8, y1: ty, x2: x + 8, y2: ty, stroke: "#333", "stroke-width": 1.5,
      }));
      continue;
    }
    const y = ys[0];
    svg.appendChild(svgEl("rect", {
      x: x - 17, y: y - 11, width: 34, height: 22,
      fill: "#fff", stroke: "#333", "stroke-width": 1.2, rx: 3,
    }));
    const label = svgEl("text", {
      x, y: y + 3.5, "text-anchor": "middle", "font-size": 8.5,
    });
    label.textContent = gateLabel(op);
    svg.appendChild(label);
  }
  box.appendChild(svg);
  return box;
}
