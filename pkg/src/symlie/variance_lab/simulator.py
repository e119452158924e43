"""Exact statevector simulation of the small gate set used by the experiment.

Conventions: qubit 0 is the most significant bit of the basis-state index
(Kronecker order), rotations are exp(-i*theta/2 * G) for a Pauli-word
generator G, and ZZ(theta) acts diagonally with phase exp(-i*theta/2) on
even-parity and exp(+i*theta/2) on odd-parity bit pairs.  All kernels accept
a batch of states as an array of shape (..., 2^n); the public StateVector
API wraps the single-state case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "GateKind",
    "Gate",
    "Circuit",
    "StateVector",
    "zero_state",
    "plus_state",
    "apply_gate",
    "run_circuit",
    "circuit_unitary",
    "graph_state",
    "expectation_parity",
]


class GateKind(str, Enum):
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    ZZ = "ZZ"
    CZ = "CZ"
    CNOT = "CNOT"
    H = "H"
    ROT3 = "ROT3"


_N_TARGETS = {
    GateKind.RX: 1, GateKind.RY: 1, GateKind.RZ: 1, GateKind.H: 1,
    GateKind.ROT3: 1, GateKind.ZZ: 2, GateKind.CZ: 2, GateKind.CNOT: 2,
}
_N_SLOTS = {
    GateKind.RX: 1, GateKind.RY: 1, GateKind.RZ: 1, GateKind.ZZ: 1,
    GateKind.ROT3: 3, GateKind.CZ: 0, GateKind.CNOT: 0, GateKind.H: 0,
}


@dataclass(frozen=True)
class Gate:
    """One gate application; parametrized kinds reference shared slots."""

    kind: GateKind
    targets: Tuple[int, ...]
    slots: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"gate targets must be distinct: {self.targets}")
        if len(self.targets) != _N_TARGETS[self.kind]:
            raise ValueError(f"{self.kind.value} takes {_N_TARGETS[self.kind]} targets")
        if len(self.slots) != _N_SLOTS[self.kind]:
            raise ValueError(f"{self.kind.value} carries {_N_SLOTS[self.kind]} parameter slots")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over densely numbered shared-parameter slots.

    `layer_starts` records the first slot of each layer for probe selection;
    it is metadata and does not affect simulation.
    """

    n_qubits: int
    gates: Tuple[Gate, ...]
    n_params: int
    layer_starts: Tuple[int, ...] = ()

    def __post_init__(self):
        referenced = set()
        for g in self.gates:
            if any(t < 0 or t >= self.n_qubits for t in g.targets):
                raise ValueError(f"gate targets {g.targets} out of range for {self.n_qubits} qubits")
            referenced.update(g.slots)
        if referenced != set(range(self.n_params)):
            raise ValueError("parameter slots must be densely numbered and all referenced")

    def slot_occurrences(self, slot: int) -> Tuple[Tuple[int, int], ...]:
        """All (gate_index, position) pairs where the slot appears."""
        if slot < 0 or slot >= self.n_params:
            raise ValueError(f"slot {slot} out of range")
        return tuple((gi, k) for gi, g in enumerate(self.gates)
                     for k, s in enumerate(g.slots) if s == slot)


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude count must be 2^n_qubits")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def zero_state(n: int) -> StateVector:
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def plus_state(n: int) -> StateVector:
    amps = np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)
    return StateVector(n, amps)


@lru_cache(maxsize=None)
def _bit(n: int, q: int) -> np.ndarray:
    return ((np.arange(1 << n) >> (n - 1 - q)) & 1).astype(np.int8)


@lru_cache(maxsize=None)
def _pair_parity(n: int, i: int, j: int) -> np.ndarray:
    return _bit(n, i) ^ _bit(n, j)


@lru_cache(maxsize=None)
def _cnot_permutation(n: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << n)
    flip = _bit(n, control).astype(np.int64) << (n - 1 - target)
    return idx ^ flip


@lru_cache(maxsize=None)
def _parity_signs(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    weight = np.zeros(1 << n, dtype=np.int64)
    while idx.any():
        weight += idx & 1
        idx = idx >> 1
    return np.where(weight % 2, -1.0, 1.0)


def _rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]],
                    dtype=np.complex128)


_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)


def _apply_1q(amps: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    # scalar combination of the two sub-block views; uniform cost in q,
    # unlike batched 2x2 matmuls which crawl when the trailing block is tiny.
    # The output buffer is allocated in the blocked shape so the writes below
    # always go through views, whatever the input layout was.
    lo = 1 << (n - 1 - q)
    x = amps.reshape(-1, 2, lo)
    x0, x1 = x[:, 0, :], x[:, 1, :]
    out = np.empty(x.shape, dtype=np.complex128)
    if u[0, 1] == 0 and u[1, 0] == 0:
        np.multiply(x0, u[0, 0], out=out[:, 0, :])
        np.multiply(x1, u[1, 1], out=out[:, 1, :])
    else:
        out[:, 0, :] = u[0, 0] * x0 + u[0, 1] * x1
        out[:, 1, :] = u[1, 0] * x0 + u[1, 1] * x1
    return out.reshape(amps.shape)


def _apply_gate_array(amps: np.ndarray, gate: Gate, angles: Sequence[float],
                      n: int) -> np.ndarray:
    kind = gate.kind
    if kind is GateKind.RX:
        return _apply_1q(amps, _rx(angles[0]), gate.targets[0], n)
    if kind is GateKind.RY:
        return _apply_1q(amps, _ry(angles[0]), gate.targets[0], n)
    if kind is GateKind.RZ:
        return _apply_1q(amps, _rz(angles[0]), gate.targets[0], n)
    if kind is GateKind.H:
        return _apply_1q(amps, _HADAMARD, gate.targets[0], n)
    if kind is GateKind.ROT3:
        # RZ-RY-RZ Euler rotation; slots are in application order, so the
        # matrix is RZ(angles[2]) RY(angles[1]) RZ(angles[0]).
        first, middle, last = angles
        out = _apply_1q(amps, _rz(first), gate.targets[0], n)
        out = _apply_1q(out, _ry(middle), gate.targets[0], n)
        return _apply_1q(out, _rz(last), gate.targets[0], n)
    if kind is GateKind.ZZ:
        i, j = gate.targets
        parity = _pair_parity(n, i, j)
        half = 0.5j * angles[0]
        phases = np.where(parity, np.exp(half), np.exp(-half))
        return amps * phases
    if kind is GateKind.CZ:
        i, j = gate.targets
        both = (_bit(n, i) & _bit(n, j)).astype(bool)
        out = amps.copy()
        out[..., both] *= -1.0
        return out
    if kind is GateKind.CNOT:
        control, target = gate.targets
        perm = _cnot_permutation(n, control, target)
        # out[x] = in[x with target bit flipped when control set]; the map is
        # an involution so gathering by it applies the gate.
        return amps[..., perm]
    raise ValueError(f"unhandled gate kind {kind}")


@lru_cache(maxsize=None)
def _summed_pair_signs(n: int, pairs: Tuple[Tuple[int, int], ...]) -> np.ndarray:
    total = np.zeros(1 << n, dtype=np.int16)
    for i, j in pairs:
        total += 1 - 2 * _pair_parity(n, i, j).astype(np.int16)
    return total


def _run_batch(circuit: Circuit, params: Sequence[float], amps: np.ndarray,
               overrides: Optional[Dict[Tuple[int, int], float]] = None,
               start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Apply gates [start, stop) to a batch of states (last axis is the state).

    `overrides` adds a shift to the angle of one specific gate occurrence,
    keyed by (gate_index, slot_position); shared slots elsewhere keep their
    base value.  This is the hook the parameter-shift rule needs (gradients
    cache the prefix state and re-run only suffixes).

    Consecutive ZZ gates sharing one slot commute and are fused into a
    single cached diagonal (an overridden occurrence is left out of the
    fusion and applied on its own).
    """
    if len(params) != circuit.n_params:
        raise ValueError(f"expected {circuit.n_params} parameters, got {len(params)}")
    n = circuit.n_qubits
    work = np.array(amps, dtype=np.complex128, copy=True)
    gates = circuit.gates
    count = len(gates) if stop is None else stop
    gi = start
    while gi < count:
        gate = gates[gi]
        if gate.kind is GateKind.ZZ and not (overrides and (gi, 0) in overrides):
            slot = gate.slots[0]
            run_end = gi + 1
            while (run_end < count and gates[run_end].kind is GateKind.ZZ
                   and gates[run_end].slots[0] == slot
                   and not (overrides and (run_end, 0) in overrides)):
                run_end += 1
            if run_end - gi > 1:
                pairs = tuple(gates[g].targets for g in range(gi, run_end))
                signs = _summed_pair_signs(n, pairs)
                work *= np.exp((-0.5j * params[slot]) * signs)
                gi = run_end
                continue
        angles = [params[s] for s in gate.slots]
        if overrides:
            for k in range(len(angles)):
                delta = overrides.get((gi, k))
                if delta is not None:
                    angles[k] += delta
        work = _apply_gate_array(work, gate, angles, n)
        gi += 1
    return work


def apply_gate(state: StateVector, gate: Gate, params: Sequence[float] = ()) -> StateVector:
    """Apply one gate, reading its angles from `params` by slot id."""
    angles = [params[s] for s in gate.slots]
    out = _apply_gate_array(state.amplitudes, gate, angles, state.n_qubits)
    result = StateVector(state.n_qubits, out)
    if abs(result.norm() - state.norm()) > 1e-10:
        raise AssertionError(f"gate {gate.kind.value} did not preserve the norm")
    return result


def run_circuit(circuit: Circuit, params: Sequence[float],
                state: Optional[StateVector] = None) -> StateVector:
    if state is None:
        state = zero_state(circuit.n_qubits)
    if state.n_qubits != circuit.n_qubits:
        raise ValueError("state and circuit qubit counts differ")
    return StateVector(circuit.n_qubits, _run_batch(circuit, params, state.amplitudes))


def circuit_unitary(circuit: Circuit, params: Sequence[float]) -> np.ndarray:
    """Dense unitary of the whole circuit (for verification at small n)."""
    dim = 1 << circuit.n_qubits
    basis = np.eye(dim, dtype=np.complex128)
    columns = _run_batch(circuit, params, basis)  # row b is the image of e_b
    return columns.T


def graph_state(edges: Iterable[Tuple[int, int]], n: int) -> StateVector:
    """|G> = prod_{(a,b) in E} CZ_{a,b} |+>^n for a simple graph on n vertices."""
    edge_list = [tuple(sorted(e)) for e in edges]
    if len(set(edge_list)) != len(edge_list):
        raise ValueError("duplicate edges")
    for a, b in edge_list:
        if a == b or a < 0 or b >= n:
            raise ValueError(f"bad edge ({a}, {b}) for {n} vertices")
    state = plus_state(n)
    amps = state.amplitudes
    for a, b in edge_list:
        amps = _apply_gate_array(amps, Gate(GateKind.CZ, (a, b)), (), n)
    return StateVector(n, amps)


def _parity_batch(amps: np.ndarray, n: int) -> np.ndarray:
    return (np.abs(amps) ** 2) @ _parity_signs(n)


def expectation_parity(state: StateVector) -> float:
    """<Z^(x)n>: sum of (-1)^weight(b) |amplitude_b|^2, always in [-1, 1]."""
    return float(_parity_batch(state.amplitudes, state.n_qubits))
