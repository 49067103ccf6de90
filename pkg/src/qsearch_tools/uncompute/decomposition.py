"""
Oracles factored as O = O_u^dagger O_p O_u.

O_u computes into ancillas, O_p applies the phase, and the inverse of O_u
cleans up. Gate lists are in time order, so the oracle circuit is O_u, then
O_p, then the inverse of O_u.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from ..circuit.gates import GateKind, oracle_call
from ..circuit.ir import Circuit, compose, inverse
from ..errors import DecompositionError, RegisterMismatchError
from ..settings import DEFAULT_TOLERANCES, MAX_SWEEP_QUBITS
from ..simulator.equivalence import EquivalenceResult, unitary_equiv
from ..simulator.oracle import PhaseOracleSpec

logger = logging.getLogger(__name__)

REFERENCE_TAG = "__reference__"


@dataclass(frozen=True)
class UncomputableDecomposition:
    O_u: Circuit
    O_p: Circuit

    def __post_init__(self) -> None:
        if self.O_u.num_main != self.O_p.num_main:
            raise RegisterMismatchError(
                f"O_u has {self.O_u.num_main} main qubits, O_p has {self.O_p.num_main}"
            )
        for part, circuit in (("O_u", self.O_u), ("O_p", self.O_p)):
            if any(g.kind is GateKind.ORACLE for g in circuit.gates):
                raise DecompositionError(f"{part} contains an oracle call")

    @property
    def num_main(self) -> int:
        return self.O_u.num_main

    @property
    def num_ancilla(self) -> int:
        return max(self.O_u.num_ancilla, self.O_p.num_ancilla)

    @property
    def D_u(self) -> int:
        return len(self.O_u)

    @property
    def D_p(self) -> int:
        return len(self.O_p)

    def widened(self, num_ancilla: int) -> "UncomputableDecomposition":
        return UncomputableDecomposition(self.O_u.widened(num_ancilla), self.O_p.widened(num_ancilla))

    def as_oracle_circuit(self) -> Circuit:
        anc = self.num_ancilla
        return compose(self.O_u.widened(anc), self.O_p.widened(anc), inverse(self.O_u).widened(anc))

    def validate(self, oracle: PhaseOracleSpec, tol: Optional[float] = None) -> EquivalenceResult:
        """
        Compare O_u^dagger O_p O_u against the bound oracle on inputs with clean
        ancillas. A full basis sweep up to MAX_SWEEP_QUBITS, seeded random
        inputs above. Raises DecompositionError on mismatch.
        """
        if oracle.num_qubits != self.num_main:
            raise RegisterMismatchError(
                f"oracle over {oracle.num_qubits} qubits, decomposition has {self.num_main} main qubits"
            )
        tol = DEFAULT_TOLERANCES.circuit if tol is None else tol
        inlined = self.as_oracle_circuit()
        reference = Circuit(self.num_main, inlined.num_ancilla, (oracle_call(REFERENCE_TAG, inlined.main_qubits),))
        result = unitary_equiv(
            inlined,
            reference,
            {REFERENCE_TAG: oracle},
            tol=tol,
            ancilla_clean=True,
            exhaustive=inlined.num_qubits <= MAX_SWEEP_QUBITS,
        )
        if not result:
            raise DecompositionError(
                f"O_u^dagger O_p O_u deviates from the oracle by {result.max_deviation:.3e} ({result.mode} check)"
            )
        logger.debug("decomposition validated: %s check on %d inputs", result.mode, result.inputs_checked)
        return result

    def to_manifest(self) -> dict:
        """Gate ranges of O_u and O_p inside `as_oracle_circuit()`."""
        return {
            "num_main": self.num_main,
            "num_ancilla": self.num_ancilla,
            "o_u": [0, self.D_u],
            "o_p": [self.D_u, self.D_u + self.D_p],
        }


def trivial_decomposition(oracle_circuit: Circuit) -> UncomputableDecomposition:
    return UncomputableDecomposition(Circuit(oracle_circuit.num_main, oracle_circuit.num_ancilla), oracle_circuit)


def _range(manifest: dict, key: str, size: int) -> Sequence[int]:
    try:
        start, stop = (int(v) for v in manifest[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise DecompositionError(f"manifest field {key!r} must be a [start, stop) pair") from exc
    if not 0 <= start <= stop <= size:
        raise DecompositionError(f"manifest range {key}={[start, stop]} outside circuit of {size} gates")
    return start, stop


def decomposition_from_manifest(circuit: Circuit, manifest: dict) -> UncomputableDecomposition:
    """
    Cut a decomposition out of a circuit file by gate ranges.

    When the circuit continues past O_p, the remainder must be exactly the
    inverse of O_u.
    """
    u_start, u_stop = _range(manifest, "o_u", len(circuit))
    p_start, p_stop = _range(manifest, "o_p", len(circuit))
    if u_stop > p_start:
        raise DecompositionError("O_u range must end before O_p starts")
    gates = circuit.gates
    O_u = Circuit(circuit.num_main, circuit.num_ancilla, gates[u_start:u_stop])
    O_p = Circuit(circuit.num_main, circuit.num_ancilla, gates[p_start:p_stop])
    tail = gates[p_stop:]
    if tail and tail != inverse(O_u).gates:
        raise DecompositionError("gates after O_p are not the inverse of O_u")
    return UncomputableDecomposition(O_u, O_p)
