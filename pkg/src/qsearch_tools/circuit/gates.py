"""
Gate model shared by every pipeline.

Two tiers: basic gates (arbitrary one-qubit unitaries and CX) and logical gates
(X, Z, H, RY, CCX, multi-controlled Z, diffusers and oracle calls) that the
decomposition pass lowers to the basic tier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, Optional, Sequence, Tuple

import numpy as np

Matrix2 = Tuple[complex, complex, complex, complex]

UNITARY_TOL = 1e-12


class GateKind(str, Enum):
    ONE_QUBIT = "U"
    CX = "CX"
    CCX = "CCX"
    X = "X"
    Z = "Z"
    H = "H"
    RY = "RY"
    DIFFUSER = "DIFFUSER"
    MCZ = "MCZ"
    ORACLE = "ORACLE"


class Tier(str, Enum):
    LOGICAL = "logical"
    BASIC = "basic"


_ARITY = {
    GateKind.ONE_QUBIT: 1,
    GateKind.X: 1,
    GateKind.Z: 1,
    GateKind.H: 1,
    GateKind.RY: 1,
    GateKind.CX: 2,
    GateKind.CCX: 3,
}

_S = 1 / math.sqrt(2)
_FIXED: dict = {
    GateKind.X: (0j, 1 + 0j, 1 + 0j, 0j),
    GateKind.Z: (1 + 0j, 0j, 0j, -1 + 0j),
    GateKind.H: (_S + 0j, _S + 0j, _S + 0j, -_S + 0j),
}

SELF_INVERSE = frozenset(
    {GateKind.X, GateKind.Z, GateKind.H, GateKind.CX, GateKind.CCX,
     GateKind.DIFFUSER, GateKind.MCZ, GateKind.ORACLE}
)


def as_matrix2(m) -> Matrix2:
    arr = np.asarray(m, dtype=complex).reshape(4)
    return tuple(complex(v) for v in arr)  # type: ignore[return-value]


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: float = 0.0
    matrix: Optional[Matrix2] = None
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if not self.qubits:
            raise ValueError(f"{self.kind.value} gate needs at least one qubit")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind.value} gate has duplicate qubits {self.qubits}")
        if min(self.qubits) < 0:
            raise ValueError(f"{self.kind.value} gate has a negative qubit id")
        arity = _ARITY.get(self.kind)
        if arity is not None and len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} expects {arity} qubit(s), got {len(self.qubits)}")
        if self.kind is GateKind.ONE_QUBIT:
            if self.matrix is None or len(self.matrix) != 4:
                raise ValueError("one-qubit gate needs a 2x2 matrix")
            m = np.array(self.matrix, dtype=complex).reshape(2, 2)
            if not np.allclose(m.conj().T @ m, np.eye(2), atol=UNITARY_TOL, rtol=0):
                raise ValueError(f"matrix of {self.label or 'U'} is not unitary")
        elif self.matrix is not None:
            raise ValueError(f"{self.kind.value} gate does not take a matrix")
        if self.kind is GateKind.ORACLE and not self.label:
            raise ValueError("oracle call needs a tag")

    @property
    def tier(self) -> Tier:
        if self.kind in (GateKind.ONE_QUBIT, GateKind.CX):
            return Tier.BASIC
        return Tier.LOGICAL

    @property
    def tag(self) -> str:
        return self.label

    def matrix2(self) -> np.ndarray:
        if self.kind is GateKind.ONE_QUBIT:
            return np.array(self.matrix, dtype=complex).reshape(2, 2)
        if self.kind is GateKind.RY:
            c, s = math.cos(self.angle / 2), math.sin(self.angle / 2)
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind in _FIXED:
            return np.array(_FIXED[self.kind], dtype=complex).reshape(2, 2)
        raise ValueError(f"{self.kind.value} is not a single-qubit gate")

    def unitary(self) -> np.ndarray:
        """Dense matrix over self.qubits, first listed qubit most significant."""
        k = len(self.qubits)
        dim = 2**k
        if self.kind in (GateKind.CX, GateKind.CCX):
            u = np.eye(dim, dtype=complex)
            u[[dim - 2, dim - 1]] = u[[dim - 1, dim - 2]]
            return u
        if self.kind is GateKind.MCZ:
            u = np.eye(dim, dtype=complex)
            u[dim - 1, dim - 1] = -1
            return u
        if self.kind is GateKind.DIFFUSER:
            return np.full((dim, dim), 2 / dim, dtype=complex) - np.eye(dim)
        if self.kind is GateKind.ORACLE:
            raise ValueError("oracle calls have no fixed matrix; bind a phase oracle")
        return self.matrix2()


# ----------------------------------------------------------------------
# CONSTRUCTORS
# ----------------------------------------------------------------------

def one_qubit(q: int, matrix, label: str = "u") -> Gate:
    return Gate(GateKind.ONE_QUBIT, (q,), matrix=as_matrix2(matrix), label=label)


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def z(q: int) -> Gate:
    return Gate(GateKind.Z, (q,))


def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def ry(q: int, angle: float) -> Gate:
    return Gate(GateKind.RY, (q,), angle=float(angle))


def cx(control: int, target: int) -> Gate:
    return Gate(GateKind.CX, (control, target))


def ccx(c1: int, c2: int, target: int) -> Gate:
    return Gate(GateKind.CCX, (c1, c2, target))


def mcz(qubits: Sequence[int]) -> Gate:
    return Gate(GateKind.MCZ, tuple(qubits))


def diffuser(qubits: Sequence[int]) -> Gate:
    return Gate(GateKind.DIFFUSER, tuple(qubits))


def oracle_call(tag: str, qubits: Sequence[int]) -> Gate:
    return Gate(GateKind.ORACLE, tuple(qubits), label=tag)


# ----------------------------------------------------------------------
# GATE ALGEBRA
# ----------------------------------------------------------------------

def _toggle_dagger(label: str) -> str:
    return label[:-3] if label.endswith("_dg") else f"{label}_dg"


def inverse_gate(gate: Gate) -> Gate:
    if gate.kind in SELF_INVERSE:
        return gate
    if gate.kind is GateKind.RY:
        return replace(gate, angle=-gate.angle)
    a, b, c, d = gate.matrix  # type: ignore[misc]
    return replace(
        gate,
        matrix=(a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate()),
        label=_toggle_dagger(gate.label),
    )


def is_identity_up_to_phase(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return abs(m[0, 1]) <= tol and abs(m[1, 0]) <= tol and abs(m[0, 0] - m[1, 1]) <= tol


def acts_on(gate: Gate) -> FrozenSet[int]:
    if gate.kind in (GateKind.ONE_QUBIT, GateKind.RY) and is_identity_up_to_phase(gate.matrix2()):
        return frozenset()
    return frozenset(gate.qubits)


def remap_gate(gate: Gate, mapping: Sequence[int]) -> Gate:
    return replace(gate, qubits=tuple(mapping[q] for q in gate.qubits))
