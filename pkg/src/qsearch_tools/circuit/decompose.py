"""
Lowering of logical gates to CX + one-qubit gates.

Multi-controlled Z on k qubits uses a V-chain of Toffolis over k-3 clean
ancillas, so diffusers lower to a number of basic gates linear in k.
"""
from __future__ import annotations

import cmath
import logging
import math
from functools import lru_cache
from typing import List, Sequence

import numpy as np

from ..errors import AncillaBudgetError
from .gates import Gate, GateKind, Tier, cx, one_qubit
from .ir import Circuit

logger = logging.getLogger(__name__)

ANCILLA_POLICIES = ("allocate", "borrow")

_S = 1 / math.sqrt(2)
_H = np.array([[_S, _S], [_S, -_S]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_T = np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
_TDG = _T.conj().T

# diffuser pre/post layers: H then X, and X then H
_XH = _X @ _H
_HX = _H @ _X


def _h(q: int) -> Gate:
    return one_qubit(q, _H, "h")


def _t(q: int) -> Gate:
    return one_qubit(q, _T, "t")


def _tdg(q: int) -> Gate:
    return one_qubit(q, _TDG, "t_dg")


def ccx_basic(a: int, b: int, t: int) -> List[Gate]:
    """Exact Toffoli: 6 CX and 9 one-qubit gates."""
    return [
        _h(t), cx(b, t), _tdg(t), cx(a, t), _t(t), cx(b, t), _tdg(t), cx(a, t),
        _t(b), _t(t), _h(t), cx(a, b), _t(a), _tdg(b), cx(a, b),
    ]


def mcz_ancillas_needed(k: int) -> int:
    return max(0, k - 3)


def _mcx_vchain(controls: Sequence[int], target: int, ancillas: Sequence[int]) -> List[Gate]:
    """Toffoli-level multi-controlled X for >= 3 controls; ancillas start and end clean."""
    c = list(controls)
    anc = list(ancillas[: len(c) - 2])
    compute: List[tuple] = [(c[0], c[1], anc[0])]
    for i in range(2, len(c) - 1):
        compute.append((c[i], anc[i - 2], anc[i - 1]))
    triples = compute + [(c[-1], anc[-1], target)] + list(reversed(compute))
    return [g for triple in triples for g in ccx_basic(*triple)]


def mcz_basic(qubits: Sequence[int], ancillas: Sequence[int] = ()) -> List[Gate]:
    qs = list(qubits)
    k = len(qs)
    if k == 1:
        return [one_qubit(qs[0], _Z, "z")]
    target = qs[-1]
    if k == 2:
        body = [cx(qs[0], target)]
    elif k == 3:
        body = ccx_basic(qs[0], qs[1], target)
    else:
        need = mcz_ancillas_needed(k)
        if len(ancillas) < need:
            raise AncillaBudgetError(f"MCZ on {k} qubits needs {need} ancillas, got {len(ancillas)}")
        body = _mcx_vchain(qs[:-1], target, ancillas)
    return [_h(target)] + body + [_h(target)]


def diffuser_basic(qubits: Sequence[int], ancillas: Sequence[int] = ()) -> List[Gate]:
    """G_k = -(H X) MCZ (X H) on each qubit; the sign rides on the first post gate."""
    qs = list(qubits)
    if len(qs) == 1:
        return [one_qubit(qs[0], _X, "x")]
    pre = [one_qubit(q, _XH, "xh") for q in qs]
    post = [one_qubit(qs[0], -_HX, "-hx")] + [one_qubit(q, _HX, "hx") for q in qs[1:]]
    return pre + mcz_basic(qs, ancillas) + post


def ancillas_needed(gate: Gate) -> int:
    if gate.kind in (GateKind.MCZ, GateKind.DIFFUSER):
        return mcz_ancillas_needed(len(gate.qubits))
    return 0


def decompose_gate(gate: Gate, ancillas: Sequence[int] = ()) -> List[Gate]:
    kind = gate.kind
    if kind in (GateKind.ONE_QUBIT, GateKind.CX, GateKind.ORACLE):
        return [gate]
    if kind in (GateKind.X, GateKind.Z, GateKind.H, GateKind.RY):
        label = kind.value.lower() if kind is not GateKind.RY else f"ry({gate.angle!r})"
        return [one_qubit(gate.qubits[0], gate.matrix2(), label)]
    if kind is GateKind.CCX:
        return ccx_basic(*gate.qubits)
    if kind is GateKind.MCZ:
        return mcz_basic(gate.qubits, ancillas)
    if kind is GateKind.DIFFUSER:
        return diffuser_basic(gate.qubits, ancillas)
    raise ValueError(f"no decomposition for {kind.value}")


@lru_cache(maxsize=None)
def basic_size(kind: GateKind, arity: int) -> int:
    """Number of basic gates a logical gate of this kind/arity lowers to (oracle calls: 0)."""
    if kind is GateKind.ORACLE:
        return 0
    if kind in (GateKind.MCZ, GateKind.DIFFUSER):
        qubits = list(range(arity))
        ancillas = list(range(arity, arity + mcz_ancillas_needed(arity)))
        return len(decompose_gate(Gate(kind, tuple(qubits)), ancillas))
    if kind is GateKind.CCX:
        return 15
    return 1


def decompose_to_basic(
    circuit: Circuit,
    ancilla_policy: str = "allocate",
    borrowed: Sequence[int] = (),
) -> Circuit:
    """
    Lower every logical gate; oracle calls pass through unchanged.

    `allocate` appends fresh clean ancillas shared by all gates. `borrow` uses
    the caller-certified clean ancillas in `borrowed` and fails when a gate
    needs more than are free.
    """
    if ancilla_policy not in ANCILLA_POLICIES:
        raise ValueError(f"unknown ancilla policy {ancilla_policy!r}")
    need = max((ancillas_needed(g) for g in circuit.gates), default=0)

    num_ancilla = circuit.num_ancilla
    if ancilla_policy == "allocate":
        pool = list(range(circuit.num_qubits, circuit.num_qubits + need))
        num_ancilla += need
    else:
        pool = list(borrowed)
        for q in pool:
            if not circuit.num_main <= q < circuit.num_qubits:
                raise AncillaBudgetError(f"borrowed qubit {q} is not an ancilla of the circuit")

    gates: List[Gate] = []
    for index, gate in enumerate(circuit.gates):
        if gate.tier is Tier.BASIC or gate.kind is GateKind.ORACLE:
            gates.append(gate)
            continue
        required = ancillas_needed(gate)
        free = [q for q in pool if q not in gate.qubits][:required]
        if len(free) < required:
            raise AncillaBudgetError(
                f"gate {index} ({gate.kind.value} on {len(gate.qubits)} qubits) needs "
                f"{required} clean ancillas, {len(free)} available"
            )
        gates.extend(decompose_gate(gate, free))

    logger.debug("decomposed %d logical gates into %d basic gates", len(circuit), len(gates))
    return Circuit(circuit.num_main, num_ancilla, tuple(gates))
