"""
Compile a CNF formula into a phase oracle O_u^dagger Z_root O_u.

O_u, in time order:
  1. one ancilla per literal holding its negation (CX from the variable, then
     X for positive literals);
  2. per clause, a balanced CCX tree ANDing those negations (the clause is
     false iff the top qubit is 1);
  3. per clause, CX from the top qubit plus X onto a clause qubit, which then
     holds "clause satisfied";
  4. a balanced CCX tree over the clause qubits; its root holds the formula value.
O_p is a single Z on the root.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..circuit.dependency import depends_on
from ..circuit.gates import Gate, GateKind, ccx, cx, x, z
from ..circuit.ir import Circuit
from ..errors import BoundViolation
from ..simulator.oracle import PhaseOracleSpec
from ..uncompute.decomposition import UncomputableDecomposition
from .dimacs import CnfFormula

logger = logging.getLogger(__name__)


def ceil_log2(value: int) -> int:
    return max(0, (value - 1).bit_length())


@dataclass(frozen=True)
class AncillaLayout:
    num_vars: int
    literal_qubits: Tuple[Tuple[int, ...], ...]
    clause_tree_qubits: Tuple[Tuple[int, ...], ...]
    clause_qubits: Tuple[int, ...]
    global_tree_qubits: Tuple[int, ...]
    root: int

    @property
    def num_ancilla(self) -> int:
        return (
            sum(len(q) for q in self.literal_qubits)
            + sum(len(q) for q in self.clause_tree_qubits)
            + len(self.clause_qubits)
            + len(self.global_tree_qubits)
        )

    @property
    def num_qubits(self) -> int:
        return self.num_vars + self.num_ancilla

    def to_dict(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "num_ancilla": self.num_ancilla,
            "literal_qubits": [list(q) for q in self.literal_qubits],
            "clause_tree_qubits": [list(q) for q in self.clause_tree_qubits],
            "clause_qubits": list(self.clause_qubits),
            "global_tree_qubits": list(self.global_tree_qubits),
            "root": self.root,
        }


class _Allocator:
    def __init__(self, first: int):
        self.next = first

    def take(self) -> int:
        q = self.next
        self.next += 1
        return q


def _and_tree(leaves: Sequence[int], alloc: _Allocator, gates: List[Gate], nodes: List[int]) -> int:
    """Post-order balanced tree, left half taking the extra leaf. Returns the top qubit."""
    if len(leaves) == 1:
        return leaves[0]
    half = (len(leaves) + 1) // 2
    left = _and_tree(leaves[:half], alloc, gates, nodes)
    right = _and_tree(leaves[half:], alloc, gates, nodes)
    node = alloc.take()
    nodes.append(node)
    gates.append(ccx(left, right, node))
    return node


@dataclass(frozen=True, eq=False)
class CompiledOracle:
    formula: CnfFormula
    decomposition: UncomputableDecomposition
    layout: AncillaLayout

    @property
    def D_u(self) -> int:
        return self.decomposition.D_u

    @property
    def D_p(self) -> int:
        return self.decomposition.D_p

    @property
    def gate_bound(self) -> int:
        f = self.formula
        return 3 * f.width * f.num_clauses + 2 * f.num_clauses - 1

    def oracle_circuit(self) -> Circuit:
        return self.decomposition.as_oracle_circuit()

    def spec(self) -> PhaseOracleSpec:
        return PhaseOracleSpec.from_mask(self.formula.satisfied_mask(), decomposition=self.decomposition)

    def to_manifest(self) -> dict:
        out = self.decomposition.to_manifest()
        out["layout"] = self.layout.to_dict()
        out["D_u"] = self.D_u
        out["D_p"] = self.D_p
        return out


def compile_oracle(formula: CnfFormula) -> CompiledOracle:
    n = formula.num_vars
    alloc = _Allocator(n)
    gates: List[Gate] = []

    literal_qubits = []
    for clause in formula.clauses:
        group = []
        for lit in clause:
            anc = alloc.take()
            gates.append(cx(abs(lit) - 1, anc))
            if lit > 0:
                gates.append(x(anc))
            group.append(anc)
        literal_qubits.append(tuple(group))

    tops, tree_qubits = [], []
    for group in literal_qubits:
        nodes: List[int] = []
        tops.append(_and_tree(group, alloc, gates, nodes))
        tree_qubits.append(tuple(nodes))

    clause_qubits = []
    for top in tops:
        q = alloc.take()
        gates += [cx(top, q), x(q)]
        clause_qubits.append(q)

    global_nodes: List[int] = []
    root = _and_tree(clause_qubits, alloc, gates, global_nodes)

    layout = AncillaLayout(n, tuple(literal_qubits), tuple(tree_qubits), tuple(clause_qubits), tuple(global_nodes), root)
    num_ancilla = alloc.next - n
    O_u = Circuit(n, num_ancilla, tuple(gates))
    O_p = Circuit(n, num_ancilla, (z(root),))
    compiled = CompiledOracle(formula, UncomputableDecomposition(O_u, O_p), layout)
    if compiled.D_u > compiled.gate_bound:
        raise BoundViolation(f"O_u has {compiled.D_u} gates, bound is {compiled.gate_bound}")
    logger.info(
        "compiled CNF n=%d c=%d W=%d: D_u=%d (bound %d), %d ancillas",
        n, formula.num_clauses, formula.width, compiled.D_u, compiled.gate_bound, num_ancilla,
    )
    return compiled


# ----------------------------------------------------------------------
# CLASSICAL EVALUATION
# ----------------------------------------------------------------------

def run_reversible(circuit: Circuit, bits: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    Push computational basis states through X/CX/CCX/Z/MCZ gates.

    bits has shape (num_qubits, batch); returns the final bits and the phase
    parity accumulated by the diagonal gates.
    """
    state = np.array(bits, dtype=np.uint8, copy=True)
    parity = np.zeros(state.shape[1:], dtype=np.uint8)
    for gate in circuit.gates:
        qs = gate.qubits
        if gate.kind is GateKind.X:
            state[qs[0]] ^= 1
        elif gate.kind is GateKind.CX:
            state[qs[1]] ^= state[qs[0]]
        elif gate.kind is GateKind.CCX:
            state[qs[2]] ^= state[qs[0]] & state[qs[1]]
        elif gate.kind in (GateKind.Z, GateKind.MCZ):
            parity ^= np.bitwise_and.reduce(state[list(qs)], axis=0)
        else:
            raise ValueError(f"{gate.kind.value} is not a classical reversible gate")
    return state, parity


def classical_phase_table(compiled: CompiledOracle) -> Tuple[np.ndarray, bool]:
    """
    (phase bits over all assignments, ancillas restored on every input),
    evaluated gate by gate without a statevector.
    """
    n = compiled.formula.num_vars
    index = np.arange(2**n, dtype=np.int64)
    bits = np.zeros((compiled.layout.num_qubits, index.size), dtype=np.uint8)
    for q in range(n):
        bits[q] = (index >> (n - 1 - q)) & 1
    final, parity = run_reversible(compiled.oracle_circuit(), bits)
    restored = bool(np.all(final[n:] == 0)) and bool(np.array_equal(final[:n], bits[:n]))
    return parity.astype(bool), restored


# ----------------------------------------------------------------------
# DEPENDENCY PROFILE
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DependencyProfile:
    counts: Tuple[int, ...]
    bounds: Tuple[int, ...]
    average: float
    average_bound: float

    def to_dict(self) -> dict:
        return {
            "counts": list(self.counts),
            "bounds": list(self.bounds),
            "average": self.average,
            "average_bound": self.average_bound,
        }


def dependency_profile(compiled: CompiledOracle) -> DependencyProfile:
    """D_v per variable; raises BoundViolation when some D_v exceeds c_v (4 + ceil log W + ceil log c)."""
    f = compiled.formula
    per_occurrence = 4 + ceil_log2(f.width) + ceil_log2(f.num_clauses)
    O_u = compiled.decomposition.O_u
    counts = tuple(len(depends_on(O_u, v - 1)) for v in range(1, f.num_vars + 1))
    bounds = tuple(f.occurrences(v) * per_occurrence for v in range(1, f.num_vars + 1))
    for v, (count, bound) in enumerate(zip(counts, bounds), start=1):
        if count > bound:
            raise BoundViolation(f"variable {v}: {count} dependent gates, bound {bound}")
    average = sum(counts) / f.num_vars
    average_bound = f.width * f.num_clauses * per_occurrence / f.num_vars
    if average > average_bound:
        raise BoundViolation(f"average dependency {average:.3f} above {average_bound:.3f}")
    return DependencyProfile(counts, bounds, average, average_bound)
