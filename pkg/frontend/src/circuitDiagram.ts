// Column-per-layer layout for circuit diagrams, computed from the canonical
// QASM the optimizer emits: one statement per line, explicit indices.

export interface DiagramOp {
  name: string;
  params: number[];
  qubits: number[];
  clbit: number | null;  // measure target
  column: number;
}

export interface CircuitDiagram {
  numQubits: number;
  numClbits: number;
  columns: number;
  ops: DiagramOp[];
}

const GATE_LINE = /^(\w+)(?:\(([^)]*)\))?\s+((?:q\[\d+\])(?:,\s*q\[\d+\])*);$/;
const MEASURE_LINE = /^measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\];$/;
const QREG_LINE = /^qreg\s+q\[(\d+)\];$/;
const CREG_LINE = /^creg\s+c\[(\d+)\];$/;

export function parseCanonicalQasm(text: string): CircuitDiagram {
  let numQubits = 0;
  let numClbits = 0;
  const parsed: Array<Omit<DiagramOp, "column">> = [];

  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "" || line.startsWith("OPENQASM") || line.startsWith("include")) {
      continue;
    }
    let match = QREG_LINE.exec(line);
    if (match) {
      numQubits = parseInt(match[1], 10);
      continue;
    }
    match = CREG_LINE.exec(line);
    if (match) {
      numClbits = parseInt(match[1], 10);
      continue;
    }
    match = MEASURE_LINE.exec(line);
    if (match) {
      parsed.push({
        name: "measure",
        params: [],
        qubits: [parseInt(match[1], 10)],
        clbit: parseInt(match[2], 10),
      });
      continue;
    }
    match = GATE_LINE.exec(line);
    if (match) {
      const params = match[2]
        ? match[2].split(",").map((p) => parseFloat(p))
        : [];
      const qubits = [...match[3].matchAll(/q\[(\d+)\]/g)].map((m) =>
        parseInt(m[1], 10));
      parsed.push({ name: match[1], params, qubits, clbit: null });
      continue;
    }
    throw new Error(`cannot lay out statement: ${line}`);
  }

  // greedy layering: an op lands one column after the deepest wire it uses;
  // barriers align their wires without occupying a column of their own
  const wireColumn = new Array<number>(numQubits).fill(0);
  const ops: DiagramOp[] = [];
  let columns = 0;
  for (const op of parsed) {
    const base = Math.max(0, ...op.qubits.map((q) => wireColumn[q]));
    const column = op.name === "barrier" ? base : base + 1;
    for (const q of op.qubits) {
      wireColumn[q] = column;
    }
    columns = Math.max(columns, column);
    ops.push({ ...op, column });
  }
  return { numQubits, numClbits, columns, ops };
}

/** Short text put on a gate glyph, e.g. "rz(1.571)". */
export function gateLabel(op: DiagramOp): string {
  if (op.params.length === 0) {
    return op.name;
  }
  const shown = op.params.map((p) => formatAngle(p)).join(",");
  return `${op.name}(${shown})`;
}

function formatAngle(value: number): string {
  const asPi = value / Math.PI;
  for (const [num, label] of [[1, "π"], [0.5, "π/2"], [0.25, "π/4"],
                              [-1, "-π"], [-0.5, "-π/2"], [-0.25, "-π/4"]] as
                             Array<[number, string]>) {
    if (Math.abs(asPi - num) < 1e-9) {
      return label;
    }
  }
  return value.toFixed(3);
}
