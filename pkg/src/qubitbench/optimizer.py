"""Three-level circuit optimization pipeline over the {rz, sx, x, cx} basis.

Passes: basis translation, adjacent-inverse cancellation with rz merging,
single-qubit run fusion (resynthesis through at most rz.sx.rz.sx.rz),
commutation-aware cancellation, and greedy shortest-path SWAP routing.
Every pass preserves the circuit unitary up to global phase (permutation-
adjusted after routing); the oracle in `circuit` checks exactly that.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .circuit import (
    BARRIER,
    MEASURE,
    Circuit,
    CircuitError,
    GateCounts,
    Instruction,
    depth,
    gate_counts,
    gate_matrix,
)
from .qasm import emit_qasm, parse_qasm
from .topology import DeviceTopology

TWO_PI = 2.0 * math.pi
ANGLE_ZERO_TOL = 1e-10

BASIS_GATES = ("rz", "sx", "x", "cx")


class OptimizerError(ValueError):
    pass


def _is_zero_angle(angle: float) -> bool:
    m = angle % TWO_PI
    return min(m, TWO_PI - m) < ANGLE_ZERO_TOL


def _rz(q: int, angle: float) -> Instruction:
    return Instruction("rz", (angle % TWO_PI,), (q,))


def _sx(q: int) -> Instruction:
    return Instruction("sx", (), (q,))


def _x(q: int) -> Instruction:
    return Instruction("x", (), (q,))


def _cx(c: int, t: int) -> Instruction:
    return Instruction("cx", (), (c, t))


def _u3_basis_seq(q: int, theta: float, phi: float, lam: float) -> list[Instruction]:
    """u3(theta, phi, lam) as rz/sx gates, identity rz factors dropped.

    Uses U3 = RZ(phi+pi) . SX . RZ(theta+pi) . SX . RZ(lam) up to global phase.
    """
    if _is_zero_angle(theta):
        total = phi + lam
        return [] if _is_zero_angle(total) else [_rz(q, total)]
    seq = []
    if not _is_zero_angle(lam):
        seq.append(_rz(q, lam))
    seq.append(_sx(q))
    if not _is_zero_angle(theta + math.pi):
        seq.append(_rz(q, theta + math.pi))
    seq.append(_sx(q))
    if not _is_zero_angle(phi + math.pi):
        seq.append(_rz(q, phi + math.pi))
    return seq


def _h_seq(q: int) -> list[Instruction]:
    return [_rz(q, math.pi / 2), _sx(q), _rz(q, math.pi / 2)]


def _translate_op(op: Instruction) -> list[Instruction]:
    name = op.name
    if name in (BARRIER, MEASURE) or name in BASIS_GATES:
        return [op]
    q = op.qubits[0] if op.qubits else 0
    if name == "z":
        return [_rz(q, math.pi)]
    if name == "s":
        return [_rz(q, math.pi / 2)]
    if name == "sdg":
        return [_rz(q, -math.pi / 2)]
    if name == "t":
        return [_rz(q, math.pi / 4)]
    if name == "tdg":
        return [_rz(q, -math.pi / 4)]
    if name == "u1":
        return [_rz(q, op.params[0])]
    if name == "y":
        return [_rz(q, math.pi), _x(q)]
    if name == "h":
        return _h_seq(q)
    if name == "sxdg":
        return [_rz(q, math.pi), _sx(q), _rz(q, math.pi)]
    if name == "rx":
        return _u3_basis_seq(q, op.params[0], -math.pi / 2, math.pi / 2)
    if name == "ry":
        return _u3_basis_seq(q, op.params[0], 0.0, 0.0)
    if name == "u2":
        return _u3_basis_seq(q, math.pi / 2, op.params[0], op.params[1])
    if name in ("u3", "u"):
        return _u3_basis_seq(q, *op.params)
    if name == "cz":
        c, t = op.qubits
        return _h_seq(t) + [_cx(c, t)] + _h_seq(t)
    if name == "swap":
        a, b = op.qubits
        return [_cx(a, b), _cx(b, a), _cx(a, b)]
    if name == "ccx":
        a, b, c = op.qubits
        seq: list[Instruction] = []
        seq += _h_seq(c)
        seq += [_cx(b, c), _rz(c, -math.pi / 4), _cx(a, c), _rz(c, math.pi / 4)]
        seq += [_cx(b, c), _rz(c, -math.pi / 4), _cx(a, c)]
        seq += [_rz(b, math.pi / 4), _rz(c, math.pi / 4)]
        seq += _h_seq(c)
        seq += [_cx(a, b), _rz(a, math.pi / 4), _rz(b, -math.pi / 4), _cx(a, b)]
        return seq
    raise OptimizerError(f"cannot translate unknown gate {name!r}")


def translate_to_basis(circuit: Circuit) -> Circuit:
    """Rewrite every gate into {rz, sx, x, cx}; barriers and measures pass through."""
    out: list[Instruction] = []
    for op in circuit.ops:
        out.extend(_translate_op(op))
    return circuit.with_ops(out)


class _Sweep:
    """Shared machinery for the cancellation sweeps: an output list with
    tombstones plus per-qubit index stacks for lookback."""

    def __init__(self) -> None:
        self.out: list[Instruction | None] = []
        self.on_qubit: dict[int, list[int]] = {}

    def push(self, op: Instruction) -> None:
        idx = len(self.out)
        self.out.append(op)
        for q in op.qubits:
            self.on_qubit.setdefault(q, []).append(idx)

    def remove(self, idx: int) -> None:
        op = self.out[idx]
        assert op is not None
        self.out[idx] = None
        for q in op.qubits:
            self.on_qubit[q].remove(idx)

    def last_on(self, q: int) -> int | None:
        stack = self.on_qubit.get(q)
        return stack[-1] if stack else None

    def lookback(self, q: int, skippable) -> int | None:
        """Most recent op index on wire q that `skippable` does not pass over."""
        for idx in reversed(self.on_qubit.get(q, ())):
            op = self.out[idx]
            if skippable(op):
                continue
            return idx
        return None

    def result(self, circuit: Circuit) -> Circuit:
        return circuit.with_ops(op for op in self.out if op is not None)


def _try_cancel(sweep: _Sweep, op: Instruction, commute: bool) -> bool:
    """Cancel/merge `op` against earlier ops; True if `op` was consumed.

    With commute=False only directly adjacent partners count; with
    commute=True the lookback skips rz past cx-controls and x past
    cx-targets (the two commutation rules).
    """
    def no_skip(_prev):  # adjacency only
        return False

    if op.name == "rz":
        q = op.qubits[0]
        skip = (lambda p: p.name == "cx" and p.qubits[0] == q) if commute else no_skip
        idx = sweep.lookback(q, skip)
        if idx is not None:
            prev = sweep.out[idx]
            if prev.name == "rz" and prev.qubits[0] == q:
                merged = (prev.params[0] + op.params[0]) % TWO_PI
                sweep.remove(idx)
                if not _is_zero_angle(merged):
                    # keep the earlier position so repeated sweeps are stable
                    sweep.out[idx] = _rz(q, merged)
                    sweep.on_qubit[q].append(idx)
                    sweep.on_qubit[q].sort()
                return True
        if _is_zero_angle(op.params[0]):
            return True
        return False

    if op.name == "x":
        q = op.qubits[0]
        skip = (lambda p: p.name == "cx" and p.qubits[1] == q) if commute else no_skip
        idx = sweep.lookback(q, skip)
        if idx is not None:
            prev = sweep.out[idx]
            if prev.name == "x" and prev.qubits[0] == q:
                sweep.remove(idx)
                return True
        return False

    if op.name == "cx":
        c, t = op.qubits
        if commute:
            skip_c = lambda p: p.name == "rz" and p.qubits[0] == c
            skip_t = lambda p: p.name == "x" and p.qubits[0] == t
        else:
            skip_c = skip_t = no_skip
        idx_c = sweep.lookback(c, skip_c)
        idx_t = sweep.lookback(t, skip_t)
        if idx_c is not None and idx_c == idx_t:
            prev = sweep.out[idx_c]
            if prev.name == "cx" and prev.qubits == (c, t):
                sweep.remove(idx_c)
                return True
        return False

    return False


def cancel_adjacent_inverses(circuit: Circuit) -> Circuit:
    """One left-to-right sweep: drop adjacent x.x / cx.cx pairs, merge adjacent
    rz on a qubit (angles mod 2pi), delete rz within 1e-10 of 0 or 2pi."""
    sweep = _Sweep()
    for op in circuit.ops:
        if not _try_cancel(sweep, op, commute=False):
            sweep.push(op)
    return sweep.result(circuit)


def commute_and_cancel(circuit: Circuit) -> Circuit:
    """Cancellation sweep that may slide rz past cx-controls and x past
    cx-targets before matching; never increases the gate count."""
    sweep = _Sweep()
    for op in circuit.ops:
        if not _try_cancel(sweep, op, commute=True):
            sweep.push(op)
    return cancel_adjacent_inverses(sweep.result(circuit))


def _synth_1q(q: int, unitary: np.ndarray) -> list[Instruction]:
    """Resynthesize a 2x2 unitary as at most rz.sx.rz.sx.rz (circuit order)."""
    a00, a01 = unitary[0, 0], unitary[0, 1]
    a10 = unitary[1, 0]
    theta = 2.0 * math.atan2(abs(a10), abs(a00))
    if abs(a10) < 1e-12:
        total = cmath.phase(unitary[1, 1]) - cmath.phase(a00)
        return [] if _is_zero_angle(total) else [_rz(q, total)]
    if abs(a00) < 1e-12:
        phi = 0.0
        lam = cmath.phase(-a01) - cmath.phase(a10)
        return _u3_basis_seq(q, math.pi, phi, lam)
    ref = cmath.phase(a00)
    phi = cmath.phase(a10) - ref
    lam = cmath.phase(-a01) - ref
    return _u3_basis_seq(q, theta, phi, lam)


def fuse_single_qubit_runs(circuit: Circuit) -> Circuit:
    """Multiply each maximal run of 1q gates on one qubit into a single 2x2
    unitary and resynthesize it; the shorter of run and synthesis is kept."""
    runs: dict[int, list[int]] = {}  # qubit -> op indices of the open run
    replacement: dict[int, list[Instruction] | None] = {}

    def close_run(q: int) -> None:
        idxs = runs.pop(q, None)
        if not idxs:
            return
        u = np.eye(2, dtype=complex)
        for i in idxs:
            op = circuit.ops[i]
            u = gate_matrix(op.name, op.params) @ u
        synth = _synth_1q(q, u)
        if len(synth) < len(idxs):
            replacement[idxs[0]] = synth
            for i in idxs[1:]:
                replacement[i] = None

    for i, op in enumerate(circuit.ops):
        if op.is_gate and len(op.qubits) == 1:
            runs.setdefault(op.qubits[0], []).append(i)
        else:
            for q in op.qubits:
                close_run(q)
    for q in list(runs):
        close_run(q)

    out: list[Instruction] = []
    for i, op in enumerate(circuit.ops):
        if i in replacement:
            seq = replacement[i]
            if seq is not None:
                out.extend(seq)
        else:
            out.append(op)
    return circuit.with_ops(out)


@dataclass(frozen=True)
class Layout:
    """Logical-to-physical qubit permutation over the device."""

    logical_to_physical: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.logical_to_physical)
        if sorted(self.logical_to_physical) != list(range(n)):
            raise OptimizerError("layout is not a permutation")

    def physical(self, logical: int) -> int:
        return self.logical_to_physical[logical]


def route_to_coupling(circuit: Circuit, topology: DeviceTopology,
                      initial_layout: Layout | None = None) -> tuple[Circuit, Layout]:
    """Greedy SWAP insertion: walk each non-adjacent 2q gate's first operand
    along the BFS shortest path toward the second, one hop at a time.  SWAPs
    are emitted as 3 cx.  Returns the routed circuit (over all device qubits)
    and the final logical-to-physical layout."""
    n_phys = topology.num_qubits
    if circuit.num_qubits > n_phys:
        raise OptimizerError(
            f"circuit needs {circuit.num_qubits} qubits, device has {n_phys}")
    l2p = list(initial_layout.logical_to_physical if initial_layout
               else range(n_phys))
    if len(l2p) != n_phys:
        raise OptimizerError("initial layout must cover every device qubit")
    p2l = [0] * n_phys
    for logical, phys in enumerate(l2p):
        p2l[phys] = logical

    edges = topology.edge_set
    out: list[Instruction] = []

    def swap_phys(u: int, v: int) -> None:
        out.extend([_cx(u, v), _cx(v, u), _cx(u, v)])
        lu, lv = p2l[u], p2l[v]
        l2p[lu], l2p[lv] = v, u
        p2l[u], p2l[v] = lv, lu

    for op in circuit.ops:
        if op.name == BARRIER or op.name == MEASURE or len(op.qubits) == 1:
            out.append(Instruction(op.name, op.params,
                                   tuple(l2p[q] for q in op.qubits), op.clbits))
            continue
        if len(op.qubits) != 2:
            raise OptimizerError(
                f"routing requires 2-qubit gates only, got {op.name} "
                f"(translate to the basis first)")
        pa, pb = l2p[op.qubits[0]], l2p[op.qubits[1]]
        if (min(pa, pb), max(pa, pb)) not in edges:
            path = topology.shortest_path(pa, pb)
            if not path:
                raise OptimizerError(f"qubits {pa} and {pb} are disconnected")
            for u, v in zip(path, path[1:-1]):
                swap_phys(u, v)
            pa, pb = l2p[op.qubits[0]], l2p[op.qubits[1]]
        out.append(Instruction(op.name, op.params, (pa, pb), op.clbits))

    routed = Circuit(n_phys, circuit.num_clbits, tuple(out))
    return routed, Layout(tuple(l2p))


def _cost(circuit: Circuit) -> tuple[int, int]:
    return depth(circuit), gate_counts(circuit).total


def _level_pipelines(circuit: Circuit, topology: DeviceTopology | None,
                     max_rounds: int = 10) -> dict[int, tuple[Circuit, Layout | None]]:
    """Run the raw level pipelines and apply the keep-best guard so that
    (depth, gates) is non-increasing from level 1 to 3."""
    c1 = cancel_adjacent_inverses(translate_to_basis(circuit))
    layout: Layout | None = None
    if topology is not None:
        c1, layout = route_to_coupling(c1, topology)

    c2 = commute_and_cancel(fuse_single_qubit_runs(c1))

    c3 = c2
    # translate and route are no-ops on an already-basis, already-routed
    # circuit, so later rounds iterate only the reducing passes
    for _ in range(max_rounds - 1):
        nxt = commute_and_cancel(fuse_single_qubit_runs(cancel_adjacent_inverses(c3)))
        if nxt == c3:
            break
        c3 = nxt

    results = {1: (c1, layout)}
    best = (c1, layout)
    for level, cand in ((2, c2), (3, c3)):
        if _cost(cand) < _cost(best[0]):
            best = (cand, layout)
        results[level] = best
    return results


def transpile(circuit: Circuit, level: int,
              topology: DeviceTopology | None = None) -> tuple[Circuit, Layout | None]:
    """Optimize at the given level (1..3); higher levels never report a worse
    (depth, gate count) thanks to the keep-best guard."""
    if level not in (1, 2, 3):
        raise OptimizerError(f"level must be 1, 2 or 3, got {level}")
    return _level_pipelines(circuit, topology)[level]


@dataclass(frozen=True)
class LevelReport:
    level: int
    depth: int
    counts: GateCounts
    qasm: str


@dataclass(frozen=True)
class OptimizationReport:
    input_depth: int
    input_counts: GateCounts
    levels: tuple[LevelReport, ...]
    layout: Layout | None

    def to_payload(self) -> dict:
        return {
            "input": {
                "depth": self.input_depth,
                "single": self.input_counts.single,
                "multi": self.input_counts.multi,
            },
            "levels": [
                {
                    "level": lr.level,
                    "depth": lr.depth,
                    "single": lr.counts.single,
                    "multi": lr.counts.multi,
                    "qasm": lr.qasm,
                }
                for lr in self.levels
            ],
            "layout": list(self.layout.logical_to_physical) if self.layout else None,
        }


def optimization_report(qasm_text: str,
                        topology: DeviceTopology | None = None,
                        levels: tuple[int, ...] = (1, 2, 3)) -> OptimizationReport:
    """Parse once, optimize at every requested level, report metrics + QASM."""
    circuit = parse_qasm(qasm_text)
    pipelines = _level_pipelines(circuit, topology)
    reports = []
    layout: Layout | None = None
    for level in levels:
        optimized, layout = pipelines[level]
        reports.append(LevelReport(level, depth(optimized),
                                   gate_counts(optimized), emit_qasm(optimized)))
    return OptimizationReport(depth(circuit), gate_counts(circuit),
                              tuple(reports), layout)
