"""
Generic oracle circuits: l factors, each an oracle call followed by a circuit
U_j that only touches its domain d(j).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..circuit.gates import Gate, GateKind, acts_on, oracle_call
from ..circuit.ir import Circuit, inverse
from ..errors import RegisterMismatchError
from ..search.circuits import DEFAULT_ORACLE_TAG, w_gates
from ..search.schedule import DiffuserSchedule
from .decomposition import UncomputableDecomposition


@dataclass(frozen=True)
class GenericOracleCircuit:
    """Time order: O, U_1, O, U_2, ..., O, U_l."""

    num_main: int
    domains: Tuple[Tuple[int, ...], ...]
    factors: Tuple[Circuit, ...]
    num_ancilla: int = 0
    oracle_tag: str = DEFAULT_ORACLE_TAG

    def __post_init__(self) -> None:
        object.__setattr__(self, "domains", tuple(tuple(sorted(set(d))) for d in self.domains))
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a generic oracle circuit needs at least one factor")
        if len(self.domains) != len(self.factors):
            raise ValueError(f"{len(self.domains)} domains for {len(self.factors)} factors")
        for j, (domain, factor) in enumerate(zip(self.domains, self.factors), start=1):
            if any(not 0 <= q < self.num_main for q in domain):
                raise RegisterMismatchError(f"domain {j} {domain} leaves the main register")
            if factor.num_main != self.num_main:
                raise RegisterMismatchError(f"factor {j} has {factor.num_main} main qubits, expected {self.num_main}")
            touched = set()
            for gate in factor.gates:
                if gate.kind is GateKind.ORACLE:
                    raise ValueError(f"factor {j} contains an oracle call")
                touched |= acts_on(gate)
            if not touched <= set(domain):
                raise ValueError(f"factor {j} acts on {sorted(touched - set(domain))} outside its domain {domain}")

    @property
    def ell(self) -> int:
        return len(self.factors)

    @property
    def main_qubits(self) -> Tuple[int, ...]:
        return tuple(range(self.num_main))

    def participation(self) -> Tuple[int, ...]:
        counts = [0] * self.num_main
        for domain in self.domains:
            for q in domain:
                counts[q] += 1
        return tuple(counts)

    def expand(self, dec: Optional[UncomputableDecomposition] = None) -> Circuit:
        """Flat circuit; with `dec`, every oracle call is inlined as O_u, O_p, O_u^dagger."""
        if dec is None:
            call = oracle_call(self.oracle_tag, self.main_qubits)
            gates: List[Gate] = []
            for factor in self.factors:
                gates.append(call)
                gates.extend(factor.gates)
            return Circuit(self.num_main, self.num_ancilla, tuple(gates))
        if dec.num_main != self.num_main:
            raise RegisterMismatchError(f"decomposition has {dec.num_main} main qubits, circuit has {self.num_main}")
        num_ancilla = max(self.num_ancilla, dec.num_ancilla)
        inlined = dec.O_u.gates + dec.O_p.gates + inverse(dec.O_u).gates
        gates = []
        for factor in self.factors:
            gates.extend(inlined)
            gates.extend(factor.gates)
        return Circuit(self.num_main, num_ancilla, tuple(gates))


def w_as_generic(
    schedule: DiffuserSchedule,
    num_ancilla: int = 0,
    oracle_tag: str = DEFAULT_ORACLE_TAG,
) -> GenericOracleCircuit:
    """W_m split at its oracle calls; each factor is the diffuser that follows the call."""
    gates = w_gates(schedule, oracle_tag)
    if not gates:
        raise ValueError("W_0 has no oracle call to factor around")
    domains: List[Sequence[int]] = []
    factors: List[Circuit] = []
    for position in range(0, len(gates), 2):
        call, diffuser = gates[position], gates[position + 1]
        assert call.kind is GateKind.ORACLE and diffuser.kind is GateKind.DIFFUSER
        domains.append(diffuser.qubits)
        factors.append(Circuit(schedule.n, num_ancilla, (diffuser,)))
    return GenericOracleCircuit(schedule.n, tuple(domains), tuple(factors), num_ancilla, oracle_tag)
