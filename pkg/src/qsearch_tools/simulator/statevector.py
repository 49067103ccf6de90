"""
Dense statevector engine.

States are complex128 tensors of shape (2,)*N + (B,): one axis per qubit,
qubit 0 first (most significant bit of the basis index), plus a trailing
batch axis so the same kernels evolve many input states at once.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Union

import numpy as np

from ..circuit.gates import Gate, GateKind
from ..circuit.ir import Circuit
from ..errors import RegisterMismatchError, UnboundOracleError
from ..settings import MAX_DENSE_QUBITS
from .oracle import PhaseOracleSpec

logger = logging.getLogger(__name__)

NORM_TOL = 1e-9

OracleBindings = Mapping[str, PhaseOracleSpec]
Predicate = Union[PhaseOracleSpec, np.ndarray, Callable[[int], bool]]


@dataclass(eq=False)
class Statevector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 0 <= self.num_qubits <= MAX_DENSE_QUBITS:
            raise ValueError(f"{self.num_qubits} qubits outside the dense limit {MAX_DENSE_QUBITS}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.num_qubits:
            raise ValueError(f"expected {2**self.num_qubits} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} is not 1")
        self.amplitudes = amps

    @classmethod
    def basis(cls, num_qubits: int, index: int = 0) -> "Statevector":
        amps = np.zeros(2**num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def zero(cls, num_qubits: int) -> "Statevector":
        return cls.basis(num_qubits, 0)

    @classmethod
    def uniform(cls, num_qubits: int) -> "Statevector":
        size = 2**num_qubits
        return cls(num_qubits, np.full(size, size**-0.5, dtype=np.complex128))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def amplitude_at(self, index: int) -> complex:
        return complex(self.amplitudes[index])


def amplitude_at(state: Statevector, index: int) -> complex:
    return state.amplitude_at(index)


# ----------------------------------------------------------------------
# KERNELS
# ----------------------------------------------------------------------

def _one_qubit(psi: np.ndarray, q: int, m: np.ndarray) -> np.ndarray:
    return np.moveaxis(np.tensordot(m, psi, axes=([1], [q])), 0, q)


def _controlled_flip(psi: np.ndarray, controls: Sequence[int], target: int) -> np.ndarray:
    out = psi.copy()
    idx = [slice(None)] * psi.ndim
    for c in controls:
        idx[c] = 1
    sel = tuple(idx)
    axis = target - sum(1 for c in controls if c < target)
    out[sel] = np.flip(out[sel], axis=axis).copy()
    return out


def _phase_on_ones(psi: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    out = psi.copy()
    idx = [slice(None)] * psi.ndim
    for q in qubits:
        idx[q] = 1
    out[tuple(idx)] *= -1
    return out


def _on_block(psi: np.ndarray, qubits: Sequence[int], fn) -> np.ndarray:
    k = len(qubits)
    front = list(range(k))
    moved = np.moveaxis(psi, list(qubits), front)
    shape = moved.shape
    flat = fn(moved.reshape(2**k, -1))
    return np.moveaxis(flat.reshape(shape), front, list(qubits))


def _reflect_uniform(flat: np.ndarray) -> np.ndarray:
    return 2 * flat.mean(axis=0, keepdims=True) - flat


def apply_gate_tensor(psi: np.ndarray, gate: Gate, phases: Mapping[str, np.ndarray]) -> np.ndarray:
    kind = gate.kind
    qs = gate.qubits
    if kind is GateKind.X:
        return np.flip(psi, axis=qs[0])
    if kind is GateKind.CX:
        return _controlled_flip(psi, qs[:1], qs[1])
    if kind is GateKind.CCX:
        return _controlled_flip(psi, qs[:2], qs[2])
    if kind in (GateKind.Z, GateKind.MCZ):
        return _phase_on_ones(psi, qs)
    if kind is GateKind.DIFFUSER:
        return _on_block(psi, qs, _reflect_uniform)
    if kind is GateKind.ORACLE:
        phase = phases[gate.label]
        return _on_block(psi, qs, lambda flat: flat * phase[:, None])
    return _one_qubit(psi, qs[0], gate.matrix2())


def phase_tables(circuit: Circuit, bindings: Optional[OracleBindings]) -> Dict[str, np.ndarray]:
    bindings = bindings or {}
    tables: Dict[str, np.ndarray] = {}
    for gate in circuit.gates:
        if gate.kind is not GateKind.ORACLE:
            continue
        spec = bindings.get(gate.label)
        if spec is None:
            raise UnboundOracleError(gate.label)
        if spec.num_qubits != len(gate.qubits):
            raise RegisterMismatchError(
                f"oracle {gate.label!r} is {spec.num_qubits} qubits wide, call site has {len(gate.qubits)}"
            )
        tables[gate.label] = spec.phase
    return tables


def evolve_columns(circuit: Circuit, columns: np.ndarray, bindings: Optional[OracleBindings] = None) -> np.ndarray:
    n = circuit.num_qubits
    if columns.shape[0] != 2**n:
        raise RegisterMismatchError(f"columns have {columns.shape[0]} rows, circuit needs {2**n}")
    phases = phase_tables(circuit, bindings)
    batch = columns.shape[1]
    psi = np.asarray(columns, dtype=np.complex128).reshape((2,) * n + (batch,))
    for gate in circuit.gates:
        psi = apply_gate_tensor(psi, gate, phases)
    return np.ascontiguousarray(psi).reshape(2**n, batch)


def apply_gate(state: Statevector, gate: Gate, bindings: Optional[OracleBindings] = None) -> Statevector:
    circuit = Circuit(state.num_qubits, 0, (gate,))
    return apply_circuit(state, circuit, bindings)


def apply_circuit(state: Statevector, circuit: Circuit, bindings: Optional[OracleBindings] = None) -> Statevector:
    if state.num_qubits != circuit.num_qubits:
        raise RegisterMismatchError(
            f"state has {state.num_qubits} qubits, circuit acts on {circuit.num_qubits}"
        )
    out = evolve_columns(circuit, state.amplitudes.reshape(-1, 1), bindings)
    return Statevector(state.num_qubits, out[:, 0])


def run(circuit: Circuit, bindings: Optional[OracleBindings] = None) -> Statevector:
    logger.debug("simulating %d gates on %d qubits", len(circuit), circuit.num_qubits)
    return apply_circuit(Statevector.zero(circuit.num_qubits), circuit, bindings)


# ----------------------------------------------------------------------
# READ-OUT
# ----------------------------------------------------------------------

def marginal_probabilities(state: Statevector, qubits: Sequence[int]) -> np.ndarray:
    """Distribution over `qubits`, listed order giving most to least significant bit."""
    keep = list(qubits)
    n = state.num_qubits
    probs = state.probabilities().reshape((2,) * n) if n else state.probabilities()
    others = tuple(a for a in range(n) if a not in keep)
    if others:
        probs = probs.sum(axis=others)
    ranked = sorted(keep)
    probs = np.transpose(probs, [ranked.index(q) for q in keep]) if keep else probs
    return np.asarray(probs).reshape(-1)


def _predicate_mask(predicate: Predicate, width: int) -> np.ndarray:
    if isinstance(predicate, PhaseOracleSpec):
        if predicate.num_qubits != width:
            raise RegisterMismatchError(f"predicate over {predicate.num_qubits} qubits, subset has {width}")
        return predicate.mask
    if isinstance(predicate, np.ndarray):
        return predicate.astype(bool)
    size = 2**width
    return np.fromiter((bool(predicate(i)) for i in range(size)), dtype=bool, count=size)


def success_probability(
    state: Statevector,
    predicate: Predicate,
    measured: Optional[Sequence[int]] = None,
) -> float:
    qubits = list(range(state.num_qubits)) if measured is None else list(measured)
    probs = marginal_probabilities(state, qubits)
    mask = _predicate_mask(predicate, len(qubits))
    return float(min(1.0, max(0.0, probs[mask].sum())))
