from __future__ import annotations

from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from .gates import acts_on
from .ir import Circuit


def depends_on_any(circuit: Circuit, qubits: Iterable[int]) -> FrozenSet[int]:
    """
    Indices of gates depending on any of `qubits`.

    A gate depends on q when it acts on q, or when it acts on a qubit touched by
    an earlier dependent gate. One forward sweep over a tainted-qubit set.
    """
    tainted = set(qubits)
    for q in tainted:
        if not 0 <= q < circuit.num_qubits:
            raise ValueError(f"qubit {q} outside register of {circuit.num_qubits}")
    included = []
    for index, gate in enumerate(circuit.gates):
        acted = acts_on(gate)
        if acted & tainted:
            included.append(index)
            tainted |= acted
    return frozenset(included)


def depends_on(circuit: Circuit, q: int) -> FrozenSet[int]:
    return depends_on_any(circuit, (q,))


def dependency_counts(circuit: Circuit, qubits: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    targets = circuit.main_qubits if qubits is None else tuple(qubits)
    return tuple(len(depends_on(circuit, q)) for q in targets)
