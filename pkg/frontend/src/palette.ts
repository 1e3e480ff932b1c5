// Color scales shared by the views.

// Fixed categorical palette indexed by cluster id (mod 10).
export const CLUSTER_COLORS = [
  "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231",
  "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#008080",
] as const;

export const UNSELECTED_QUBIT_COLOR = "#c6c6c6";
export const BARYCENTER_COLOR = "#d62728";
export const MEMBER_LINE_COLOR = "rgba(128,128,128,0.25)";

const HEATMAP_LOW = "#f7fbff";   // lightest blue
const HEATMAP_HIGH = "#08306b";  // darkest blue
const MATRIX_LOW = "#08306b";    // dark blue = minimum distance
const MATRIX_HIGH = "#ffff00";   // bright yellow = maximum distance

function hexToRgb(hex: string): [number, number, number] {
  const v = parseInt(hex.slice(1), 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

function lerpColor(low: string, high: string, t: number): string {
  const a = hexToRgb(low);
  const b = hexToRgb(high);
  const mix = a.map((c, i) => Math.round(c + (b[i] - c) * t));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}

export function clusterColor(clusterId: number): string {
  return CLUSTER_COLORS[((clusterId % 10) + 10) % 10];
}

/** Sequential blue scale for bin counts; t in [0, 1], darker = more qubits. */
export function heatmapColor(t: number): string {
  return lerpColor(HEATMAP_LOW, HEATMAP_HIGH, clamp01(t));
}

/** Distance-matrix scale: dark blue at the minimum, bright yellow at the maximum. */
export function matrixColor(t: number): string {
  return lerpColor(MATRIX_LOW, MATRIX_HIGH, clamp01(t));
}

export const HEATMAP_MAX_COLOR = heatmapColor(1);
export const HEATMAP_MIN_COLOR = heatmapColor(0);
export const MATRIX_MAX_COLOR = matrixColor(1);
export const MATRIX_MIN_COLOR = matrixColor(0);

function clamp01(t: number): number {
  return t < 0 ? 0 : t > 1 ? 1 : t;
}
