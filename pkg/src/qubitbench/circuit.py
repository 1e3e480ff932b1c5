"""Quantum circuit IR, gate metrics, and the dense-unitary correctness oracle.

The circuit is an ordered list of instructions over flat qubit/clbit indices.
Basis-state convention throughout: qubit 0 is the least-significant bit of
the state index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# name -> (number of angle params, number of qubit operands)
GATE_SIGNATURES: dict[str, tuple[int, int]] = {
    "u1": (1, 1), "u2": (2, 1), "u3": (3, 1), "u": (3, 1),
    "rx": (1, 1), "ry": (1, 1), "rz": (1, 1),
    "x": (0, 1), "y": (0, 1), "z": (0, 1), "h": (0, 1),
    "s": (0, 1), "sdg": (0, 1), "t": (0, 1), "tdg": (0, 1),
    "sx": (0, 1), "sxdg": (0, 1),
    "cx": (0, 2), "cz": (0, 2), "swap": (0, 2),
    "ccx": (0, 3),
}

BARRIER = "barrier"
MEASURE = "measure"

MAX_ORACLE_QUBITS = 10


class CircuitError(ValueError):
    """Invalid instruction or circuit construction."""


@dataclass(frozen=True)
class Instruction:
    """One gate, barrier, or measure application."""

    name: str
    params: tuple[float, ...] = ()
    qubits: tuple[int, ...] = ()
    clbits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit operand in {self.name}")
        if self.name in GATE_SIGNATURES:
            n_params, n_qubits = GATE_SIGNATURES[self.name]
            if len(self.params) != n_params:
                raise CircuitError(
                    f"{self.name} takes {n_params} parameter(s), got {len(self.params)}")
            if len(self.qubits) != n_qubits:
                raise CircuitError(
                    f"{self.name} acts on {n_qubits} qubit(s), got {len(self.qubits)}")
            if self.clbits:
                raise CircuitError(f"{self.name} takes no classical bits")
        elif self.name == MEASURE:
            if len(self.qubits) != 1 or len(self.clbits) != 1:
                raise CircuitError("measure maps one qubit to one clbit")
        elif self.name == BARRIER:
            if not self.qubits:
                raise CircuitError("barrier needs at least one qubit")
            if self.clbits:
                raise CircuitError("barrier takes no classical bits")
        else:
            raise CircuitError(f"unknown instruction {self.name!r}")
        for p in self.params:
            if not math.isfinite(p):
                raise CircuitError(f"non-finite parameter in {self.name}")

    @property
    def is_gate(self) -> bool:
        return self.name in GATE_SIGNATURES


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered instruction list over flat registers."""

    num_qubits: int
    num_clbits: int = 0
    ops: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        if self.num_qubits < 0 or self.num_clbits < 0:
            raise CircuitError("register sizes must be non-negative")
        for op in self.ops:
            for q in op.qubits:
                if not 0 <= q < self.num_qubits:
                    raise CircuitError(f"qubit {q} out of range in {op.name}")
            for c in op.clbits:
                if not 0 <= c < self.num_clbits:
                    raise CircuitError(f"clbit {c} out of range in {op.name}")

    def with_ops(self, ops) -> "Circuit":
        return Circuit(self.num_qubits, self.num_clbits, tuple(ops))


@dataclass(frozen=True)
class GateCounts:
    single: int
    multi: int

    @property
    def total(self) -> int:
        return self.single + self.multi


def depth(circuit: Circuit) -> int:
    """Longest dependency chain; barriers add no layer but synchronize wires."""
    q_level = [0] * circuit.num_qubits
    c_level = [0] * circuit.num_clbits
    overall = 0
    for op in circuit.ops:
        wires = [q_level[q] for q in op.qubits] + [c_level[c] for c in op.clbits]
        base = max(wires, default=0)
        level = base if op.name == BARRIER else base + 1
        for q in op.qubits:
            q_level[q] = level
        for c in op.clbits:
            c_level[c] = level
        overall = max(overall, level)
    return overall


def gate_counts(circuit: Circuit) -> GateCounts:
    """Single vs multi-qubit gate tally; barriers and measures excluded."""
    single = multi = 0
    for op in circuit.ops:
        if not op.is_gate:
            continue
        if len(op.qubits) == 1:
            single += 1
        else:
            multi += 1
    return GateCounts(single, multi)


_SQ2 = 1.0 / math.sqrt(2.0)


def gate_matrix(name: str, params: tuple[float, ...] = ()) -> np.ndarray:
    """Fixed matrix for a supported gate, little-endian over its operands
    (operand 0 is the least-significant bit of the gate-local index)."""
    p = params
    if name == "x":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if name == "y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if name == "z":
        return np.diag([1, -1]).astype(complex)
    if name == "h":
        return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
    if name == "s":
        return np.diag([1, 1j]).astype(complex)
    if name == "sdg":
        return np.diag([1, -1j]).astype(complex)
    if name == "t":
        return np.diag([1, np.exp(1j * math.pi / 4)]).astype(complex)
    if name == "tdg":
        return np.diag([1, np.exp(-1j * math.pi / 4)]).astype(complex)
    if name == "sx":
        return 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)
    if name == "sxdg":
        return 0.5 * np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]], dtype=complex)
    if name == "rx":
        c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if name == "ry":
        c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if name == "rz":
        return np.diag([np.exp(-1j * p[0] / 2), np.exp(1j * p[0] / 2)]).astype(complex)
    if name == "u1":
        return np.diag([1, np.exp(1j * p[0])]).astype(complex)
    if name == "u2":
        return _u3_matrix(math.pi / 2, p[0], p[1])
    if name in ("u3", "u"):
        return _u3_matrix(p[0], p[1], p[2])
    if name == "cx":
        m = np.eye(4, dtype=complex)
        m[[1, 3]] = m[[3, 1]]
        return m
    if name == "cz":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if name == "swap":
        return np.eye(4, dtype=complex)[[0, 2, 1, 3]]
    if name == "ccx":
        m = np.eye(8, dtype=complex)
        m[[3, 7]] = m[[7, 3]]
        return m
    raise CircuitError(f"no matrix for {name!r}")


def _u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s],
         [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=complex,
    )


def apply_gate(unitary: np.ndarray, gate: np.ndarray,
               qubits: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Left-multiply `gate` (acting on `qubits`) into a full-space unitary."""
    k = len(qubits)
    t = unitary.reshape([2] * num_qubits + [unitary.shape[1]])
    # gate-local axes, most-significant operand first
    axes = [num_qubits - 1 - q for q in reversed(qubits)]
    t = np.moveaxis(t, axes, range(k))
    shape = t.shape
    t = (gate @ t.reshape(2 ** k, -1)).reshape(shape)
    t = np.moveaxis(t, range(k), axes)
    return t.reshape(unitary.shape)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n unitary of a measurement-free circuit (n <= 10)."""
    n = circuit.num_qubits
    if n > MAX_ORACLE_QUBITS:
        raise CircuitError(f"unitary oracle capped at {MAX_ORACLE_QUBITS} qubits, got {n}")
    u = np.eye(2 ** n, dtype=complex)
    for op in circuit.ops:
        if op.name == BARRIER:
            continue
        if op.name == MEASURE:
            raise CircuitError("circuit with measurements has no unitary")
        u = apply_gate(u, gate_matrix(op.name, op.params), op.qubits, n)
    return u


def equivalent_up_to_global_phase(u: np.ndarray, v: np.ndarray,
                                  tol: float = 1e-9) -> bool:
    """True iff V = e^{i phi} U within tol: | |tr(U^dag V)| - 2^n | <= tol * 2^n."""
    if u.shape != v.shape:
        raise CircuitError(f"dimension mismatch {u.shape} vs {v.shape}")
    dim = u.shape[0]
    return abs(abs(np.trace(u.conj().T @ v)) - dim) <= tol * dim
