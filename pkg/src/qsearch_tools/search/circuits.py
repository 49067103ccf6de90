"""
Builders for the recursive search circuits.

Operator products are written right to left; the gate lists produced here are
in time order. W_j in time order is W_{j-1}, O, W_{j-1}^dagger, G_{k_j}, W_{j-1},
and D_j is D_{j-1}, O, G_{k_j}, D_{j-1}.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from ..circuit.gates import Gate, GateKind, diffuser, h, inverse_gate, mcz, oracle_call, x
from ..circuit.ir import Circuit
from .schedule import DiffuserSchedule

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_TAG = "O"


def build_diffuser(qubits: Sequence[int]) -> Gate:
    return diffuser(qubits)


def _depth(schedule: DiffuserSchedule, depth: Optional[int]) -> int:
    if depth is None:
        return schedule.m
    if not 0 <= depth <= schedule.m:
        raise ValueError(f"depth {depth} outside 0..{schedule.m}")
    return depth


def w_gates(schedule: DiffuserSchedule, oracle_tag: str = DEFAULT_ORACLE_TAG, depth: Optional[int] = None) -> List[Gate]:
    oracle = oracle_call(oracle_tag, tuple(range(schedule.n)))
    level: List[Gate] = []
    for j in range(1, _depth(schedule, depth) + 1):
        undo = [inverse_gate(g) for g in reversed(level)]
        level = level + [oracle] + undo + [build_diffuser(schedule.block(j))] + level
    return level


def d_gates(schedule: DiffuserSchedule, oracle_tag: str = DEFAULT_ORACLE_TAG, depth: Optional[int] = None) -> List[Gate]:
    oracle = oracle_call(oracle_tag, tuple(range(schedule.n)))
    level: List[Gate] = []
    for j in range(1, _depth(schedule, depth) + 1):
        level = level + [oracle, build_diffuser(schedule.block(j))] + level
    return level


def build_W(
    schedule: DiffuserSchedule,
    oracle_tag: str = DEFAULT_ORACLE_TAG,
    depth: Optional[int] = None,
    num_ancilla: int = 0,
) -> Circuit:
    """W_m (or W_depth) on the schedule's n main qubits; (3^m - 1)/2 oracle calls."""
    gates = w_gates(schedule, oracle_tag, depth)
    logger.debug("W for k=%s: %d gates", schedule, len(gates))
    return Circuit(schedule.n, num_ancilla, tuple(gates))


def build_D(
    schedule: DiffuserSchedule,
    oracle_tag: str = DEFAULT_ORACLE_TAG,
    depth: Optional[int] = None,
    num_ancilla: int = 0,
) -> Circuit:
    return Circuit(schedule.n, num_ancilla, tuple(d_gates(schedule, oracle_tag, depth)))


def hadamard_layer(qubits: Sequence[int]) -> List[Gate]:
    return [h(q) for q in qubits]


def f0_gates(qubits: Sequence[int]) -> List[Gate]:
    """Sign flip of |0...0> on `qubits`: X-conjugated multi-controlled Z."""
    flips = [x(q) for q in qubits]
    return flips + [mcz(qubits)] + flips


def f0_circuit(n: int) -> Circuit:
    if n < 1:
        raise ValueError("F_0 needs at least one qubit")
    return Circuit(n, 0, tuple(f0_gates(range(n))))


def marked_oracle_gates(target: int, qubits: Sequence[int]) -> List[Gate]:
    """Phase flip of the single basis state `target` over `qubits` (first qubit most significant)."""
    width = len(qubits)
    if not 0 <= target < 2**width:
        raise ValueError(f"target {target} outside {width}-qubit register")
    flips = [x(q) for i, q in enumerate(qubits) if not (target >> (width - 1 - i)) & 1]
    return flips + [mcz(qubits)] + flips


def inline_marked_oracle(circuit: Circuit, target: int, oracle_tag: str = DEFAULT_ORACLE_TAG) -> Circuit:
    gates: List[Gate] = []
    for gate in circuit.gates:
        if gate.kind is GateKind.ORACLE and gate.label == oracle_tag:
            gates.extend(marked_oracle_gates(target, gate.qubits))
        else:
            gates.append(gate)
    return Circuit(circuit.num_main, circuit.num_ancilla, tuple(gates))
