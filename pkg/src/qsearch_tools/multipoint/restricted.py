"""
Restricted oracles O_g = D_g^{-1} (I_d x O) D_g.

The loader D_g writes g(i) into a second n-qubit register: the first d qubits
are the main register, the second register follows as ancillas.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional

import numpy as np

from ..circuit.gates import Gate, cx, oracle_call, x
from ..circuit.ir import Circuit, inverse, remap
from ..errors import RegisterMismatchError
from ..gf2.hashing import KernelParam
from ..simulator.oracle import PhaseOracleSpec
from ..uncompute.decomposition import UncomputableDecomposition

logger = logging.getLogger(__name__)

BASE_TAG = "O"


def build_Dg(g: KernelParam) -> Circuit:
    """CX(first j -> second i) for each C[i][j] = 1, grouped by j, then X(second i) where p_i = 1."""
    d, n = g.d, g.n
    gates: List[Gate] = []
    for j in range(d):
        for i in np.flatnonzero(g.C.bits[:, j]):
            gates.append(cx(j, d + int(i)))
    for i in np.flatnonzero(g.p):
        gates.append(x(d + int(i)))
    return Circuit(d, n, tuple(gates))


def lift_decomposition(dec: UncomputableDecomposition, loader: Circuit) -> UncomputableDecomposition:
    """((I x O_u) D_g, I x O_p) on d main qubits, the n-qubit second register and O's ancillas."""
    d, n = loader.num_main, loader.num_ancilla
    if dec.num_main != n:
        raise RegisterMismatchError(f"decomposition over {dec.num_main} qubits, loader writes {n}")
    num_ancilla = n + dec.num_ancilla
    mapping = [d + q for q in range(n + dec.num_ancilla)]
    O_u = remap(dec.O_u.widened(dec.num_ancilla), mapping, d, num_ancilla)
    O_p = remap(dec.O_p.widened(dec.num_ancilla), mapping, d, num_ancilla)
    return UncomputableDecomposition(Circuit(d, num_ancilla, loader.gates + O_u.gates), O_p)


@dataclass(frozen=True, eq=False)
class RestrictedOracle:
    base: PhaseOracleSpec
    g: KernelParam
    loader: Circuit
    predicate_spec: PhaseOracleSpec
    decomposition: Optional[UncomputableDecomposition] = None

    @property
    def d(self) -> int:
        return self.g.d

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def total_qubits(self) -> int:
        return self.d + self.n

    def marked(self) -> List[int]:
        return sorted(self.predicate_spec.marked())

    def circuit(self, tag: str = BASE_TAG) -> Circuit:
        """D_g, the base oracle on the second register, D_g^{-1}; bind `tag` to the base oracle."""
        call = oracle_call(tag, tuple(range(self.d, self.d + self.n)))
        return Circuit(self.d, self.n, self.loader.gates + (call,) + inverse(self.loader).gates)

    @cached_property
    def full_register_spec(self) -> PhaseOracleSpec:
        """Phase of O_g on every |i>|y>: f(y xor g(i))."""
        image = self.g.image_array()[:, None]
        y = np.arange(2**self.n, dtype=np.int64)[None, :]
        return PhaseOracleSpec.from_mask(self.base.mask[y ^ image].reshape(-1))


def restrict_oracle(oracle: PhaseOracleSpec, g: KernelParam) -> RestrictedOracle:
    if oracle.num_qubits != g.n:
        raise RegisterMismatchError(f"oracle over {oracle.num_qubits} qubits, kernel map into {g.n}")
    loader = build_Dg(g)
    mask = oracle.mask[g.image_array()]
    decomposition = None
    if oracle.decomposition is not None:
        decomposition = lift_decomposition(oracle.decomposition, loader)
    spec = PhaseOracleSpec.from_mask(mask, decomposition=decomposition)
    logger.debug("restricted oracle: d=%d, %d loader gates, %d marked", g.d, len(loader), int(mask.sum()))
    return RestrictedOracle(oracle, g, loader, spec, decomposition)
