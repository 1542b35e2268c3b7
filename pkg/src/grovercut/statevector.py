"""Dense state-vector simulator for the primitive gate set.

Conventions, used everywhere in the package:

* Qubit 0 is the least-significant bit of the basis index, so basis state
  ``|i>`` assigns qubit q the bit ``(i >> q) & 1``.
* Bitstrings are printed most-significant-first (qubit k-1 leftmost).
* All primitives are self-inverse, so a program is inverted by replaying
  its gates in reverse order.
* Measurement is sampling: shots are drawn from ``|amplitude|^2`` without
  collapsing the state. The search loop re-prepares the state each round,
  so collapse would add nothing.

Multi-controlled X acts directly on the state vector (amplitude pairs are
swapped where all controls read 1) rather than being decomposed into
Toffolis; simulation fidelity, not gate-count realism, is the goal.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

# process-pool friendly threading backend; avoids the TBB-version probe
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numba
import numpy as np

from .errors import CapacityError
from .rng import make_rng

DEFAULT_QUBIT_CAP = 26
NORM_TOLERANCE = 1e-10

@dataclass(frozen=True)
class Gate:
    """One primitive: kind 'x' (with optional controls), 'h', or 'z'."""

    kind: str
    target: int
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("x", "h", "z"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind != "x" and self.controls:
            raise ValueError(f"{self.kind} gate takes no controls")
        ctrls = tuple(int(c) for c in self.controls)
        if len(set(ctrls)) != len(ctrls):
            raise ValueError(f"duplicate controls {ctrls}")
        if self.target in ctrls:
            raise ValueError(f"target {self.target} also appears as a control")
        object.__setattr__(self, "controls", ctrls)
        object.__setattr__(self, "target", int(self.target))


def x(target: int) -> Gate:
    return Gate("x", target)


def h(target: int) -> Gate:
    return Gate("h", target)


def z(target: int) -> Gate:
    return Gate("z", target)


def phase_flip_if_one(target: int) -> Gate:
    """Alias for the Z gate: negates amplitudes where the target bit is 1."""
    return z(target)


def cnot(control: int, target: int) -> Gate:
    return Gate("x", target, (control,))


def ccx(control_a: int, control_b: int, target: int) -> Gate:
    return Gate("x", target, (control_a, control_b))


def mcx(controls: Iterable[int], target: int) -> Gate:
    """Multi-controlled X; with zero controls this is a plain X."""
    return Gate("x", target, tuple(controls))


@dataclass(frozen=True)
class CircuitProgram:
    """Ordered gate list, replayable forward and (by reversal) backward."""

    gates: tuple[Gate, ...]

    def inverted(self) -> "CircuitProgram":
        return CircuitProgram(tuple(reversed(self.gates)))

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "CircuitProgram") -> "CircuitProgram":
        return CircuitProgram(self.gates + other.gates)


def program(gates: Iterable[Gate]) -> CircuitProgram:
    return CircuitProgram(tuple(gates))


class QuantumState:
    """Amplitude vector over 2**num_qubits basis states."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    def norm_error(self) -> float:
        a = self.amplitudes
        return abs(float(np.real(np.vdot(a, a))) - 1.0)


def allocate(num_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    """All-zeros state |0...0>; refuses to allocate beyond the qubit cap."""
    if num_qubits < 1:
        raise ValueError(f"need at least 1 qubit, got {num_qubits}")
    if num_qubits > cap:
        raise CapacityError("qubit count", num_qubits, cap)
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return QuantumState(num_qubits, amps)


def basis_state(num_qubits: int, index: int, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    """Basis state |index>; test and setup helper."""
    state = allocate(num_qubits, cap)
    if not (0 <= index < 1 << num_qubits):
        raise ValueError(f"basis index {index} out of range")
    state.amplitudes[0] = 0.0
    state.amplitudes[index] = 1.0
    return state


# Controlled-X visits only the amplitude pairs whose controls all read 1:
# `positions` holds the sorted bit positions of the controls plus the
# target, each compact counter value is expanded by re-inserting those bits
# (controls forced to 1 via set_mask, target to 0), and the pair across the
# target bit is swapped. Small states use the serial instances; the
# parallel ones only pay off once the state outweighs the fork overhead.
_PARALLEL_THRESHOLD = 1 << 17


def _controlled_x_body(amps, count, positions, set_mask, tbit):  # pragma: no cover
    nbits = positions.shape[0]
    for j in numba.prange(count):
        i = np.int64(j)
        for idx in range(nbits):
            p = positions[idx]
            low = (np.int64(1) << p) - np.int64(1)
            i = ((i >> p) << (p + np.int64(1))) | (i & low)
        i0 = i | set_mask
        i1 = i0 | tbit
        a = amps[i0]
        amps[i0] = amps[i1]
        amps[i1] = a


def _hadamard_body(amps, tpos):  # pragma: no cover
    half = amps.shape[0] >> 1
    low = (1 << tpos) - 1
    tbit = 1 << tpos
    s = 2.0 ** -0.5
    for j in numba.prange(half):
        i0 = ((j >> tpos) << (tpos + 1)) | (j & low)
        i1 = i0 | tbit
        a = amps[i0]
        b = amps[i1]
        amps[i0] = s * (a + b)
        amps[i1] = s * (a - b)


def _phase_flip_body(amps, tpos):  # pragma: no cover
    half = amps.shape[0] >> 1
    low = (1 << tpos) - 1
    tbit = 1 << tpos
    for j in numba.prange(half):
        i1 = ((j >> tpos) << (tpos + 1)) | (j & low) | tbit
        amps[i1] = -amps[i1]


_cx_serial = numba.njit(cache=True)(_controlled_x_body)
_cx_parallel = numba.njit(cache=True, parallel=True)(_controlled_x_body)
_h_serial = numba.njit(cache=True)(_hadamard_body)
_h_parallel = numba.njit(cache=True, parallel=True)(_hadamard_body)
_z_serial = numba.njit(cache=True)(_phase_flip_body)
_z_parallel = numba.njit(cache=True, parallel=True)(_phase_flip_body)


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """Apply one primitive in place and return the state."""
    k = state.num_qubits
    if not (0 <= gate.target < k):
        raise ValueError(f"target {gate.target} out of range for {k} qubits")
    for c in gate.controls:
        if not (0 <= c < k):
            raise ValueError(f"control {c} out of range for {k} qubits")
    amps = state.amplitudes
    big = amps.shape[0] >= _PARALLEL_THRESHOLD
    if gate.kind == "x":
        positions = np.array(sorted(gate.controls + (gate.target,)), dtype=np.int64)
        set_mask = 0
        for c in gate.controls:
            set_mask |= 1 << c
        count = amps.shape[0] >> len(positions)
        kern = _cx_parallel if count >= _PARALLEL_THRESHOLD else _cx_serial
        kern(amps, count, positions, np.int64(set_mask), np.int64(1 << gate.target))
    elif gate.kind == "h":
        (_h_parallel if big else _h_serial)(amps, gate.target)
    else:
        (_z_parallel if big else _z_serial)(amps, gate.target)
    return state


def apply_h_range(state: QuantumState, qubits: Iterable[int]) -> QuantumState:
    """Hadamard on each listed qubit; from all-zeros this yields the uniform state."""
    for q in qubits:
        apply_gate(state, h(q))
    return state


# running account of the worst norm drift seen across all executed programs
NORM_STATS = {"max_error": 0.0, "programs": 0}


def run_program(state: QuantumState, prog: CircuitProgram) -> QuantumState:
    """Apply all gates in order, then verify the norm survived."""
    for gate in prog.gates:
        apply_gate(state, gate)
    err = state.norm_error()
    NORM_STATS["programs"] += 1
    if err > NORM_STATS["max_error"]:
        NORM_STATS["max_error"] = err
    if err >= NORM_TOLERANCE:
        raise ArithmeticError(
            f"state norm drifted by {err:.3e} after a {len(prog)}-gate program"
        )
    return state


def probabilities(state: QuantumState) -> np.ndarray:
    a = state.amplitudes
    return (a.real * a.real + a.imag * a.imag).astype(np.float64, copy=False)


def measure(state: QuantumState, seed: int, shots: int) -> list[str]:
    """Sample `shots` basis states from |amplitude|^2; the state is untouched.

    Returns bitstrings printed most-significant-first. Deterministic per seed.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs = probabilities(state)
    probs = probs / probs.sum()
    cdf = np.cumsum(probs)
    draws = make_rng(seed).random(shots)
    indices = np.searchsorted(cdf, draws, side="right")
    indices = np.minimum(indices, len(probs) - 1)
    k = state.num_qubits
    return [format(int(i), f"0{k}b") for i in indices]


def sampled_indices(state: QuantumState, seed: int, shots: int) -> np.ndarray:
    """Like ``measure`` but returning raw basis indices (same stream, same draws)."""
    return np.array([int(s, 2) for s in measure(state, seed, shots)], dtype=np.int64)
