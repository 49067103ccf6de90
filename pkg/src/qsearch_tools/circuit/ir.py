from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple

from ..errors import RegisterMismatchError
from .gates import Gate, GateKind, Tier, inverse_gate, remap_gate


@dataclass(frozen=True)
class Circuit:
    """Chronological gate list over `num_main` main qubits followed by `num_ancilla` ancillas."""

    num_main: int
    num_ancilla: int = 0
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_main < 0 or self.num_ancilla < 0:
            raise ValueError("register sizes must be non-negative")
        limit = self.num_main + self.num_ancilla
        for index, gate in enumerate(self.gates):
            if max(gate.qubits) >= limit:
                raise ValueError(
                    f"gate {index} ({gate.kind.value} {gate.qubits}) outside register of {limit} qubits"
                )

    @property
    def num_qubits(self) -> int:
        return self.num_main + self.num_ancilla

    @property
    def main_qubits(self) -> Tuple[int, ...]:
        return tuple(range(self.num_main))

    @property
    def ancilla_qubits(self) -> Tuple[int, ...]:
        return tuple(range(self.num_main, self.num_qubits))

    @property
    def tier(self) -> Tier:
        if all(g.tier is Tier.BASIC for g in self.gates):
            return Tier.BASIC
        return Tier.LOGICAL

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def oracle_tags(self) -> FrozenSet[str]:
        return frozenset(g.label for g in self.gates if g.kind is GateKind.ORACLE)

    def then(self, *gates: Gate) -> "Circuit":
        return Circuit(self.num_main, self.num_ancilla, self.gates + tuple(gates))

    def widened(self, num_ancilla: int) -> "Circuit":
        if num_ancilla <= self.num_ancilla:
            return self
        return Circuit(self.num_main, num_ancilla, self.gates)


def empty(num_main: int, num_ancilla: int = 0) -> Circuit:
    return Circuit(num_main, num_ancilla, ())


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(
        circuit.num_main,
        circuit.num_ancilla,
        tuple(inverse_gate(g) for g in reversed(circuit.gates)),
    )


def compose(*circuits: Circuit) -> Circuit:
    if not circuits:
        raise ValueError("compose needs at least one circuit")
    num_main = circuits[0].num_main
    for c in circuits[1:]:
        if c.num_main != num_main:
            raise RegisterMismatchError(
                f"main registers differ: {num_main} vs {c.num_main}"
            )
    num_ancilla = max(c.num_ancilla for c in circuits)
    gates: list[Gate] = []
    for c in circuits:
        gates.extend(c.gates)
    return Circuit(num_main, num_ancilla, tuple(gates))


def remap(circuit: Circuit, mapping: Sequence[int], num_main: int, num_ancilla: int) -> Circuit:
    if len(mapping) < circuit.num_qubits:
        raise RegisterMismatchError(
            f"mapping covers {len(mapping)} qubits, circuit has {circuit.num_qubits}"
        )
    return Circuit(num_main, num_ancilla, tuple(remap_gate(g, mapping) for g in circuit.gates))
