from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ..circuit.ir import Circuit
from ..errors import RegisterMismatchError
from ..seeding import make_rng
from ..settings import MAX_SWEEP_QUBITS, RANDOM_EQUIV_STATES
from .statevector import OracleBindings, evolve_columns

logger = logging.getLogger(__name__)

# upper bound on amplitudes held per batch
_CHUNK_ELEMENTS = 2**20


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    max_deviation: float
    inputs_checked: int
    mode: str

    def __bool__(self) -> bool:
        return self.equivalent


def _basis_batches(n: int, indices: np.ndarray) -> Iterator[np.ndarray]:
    dim = 2**n
    step = max(1, _CHUNK_ELEMENTS // dim)
    for start in range(0, indices.size, step):
        chunk = indices[start:start + step]
        cols = np.zeros((dim, chunk.size), dtype=np.complex128)
        cols[chunk, np.arange(chunk.size)] = 1.0
        yield cols


def _random_batch(n: int, num_anc: int, count: int, ancilla_clean: bool, rng) -> np.ndarray:
    width = n - num_anc if ancilla_clean else n
    raw = rng.normal(size=(2**width, count)) + 1j * rng.normal(size=(2**width, count))
    raw /= np.linalg.norm(raw, axis=0, keepdims=True)
    if not ancilla_clean:
        return raw
    cols = np.zeros((2**n, count), dtype=np.complex128)
    cols[:: 2**num_anc] = raw
    return cols


def unitary_equiv(
    c1: Circuit,
    c2: Circuit,
    bindings: Optional[OracleBindings] = None,
    tol: float = 1e-9,
    up_to_global_phase: bool = False,
    ancilla_clean: bool = False,
    exhaustive: Optional[bool] = None,
    seed: int = 0,
) -> EquivalenceResult:
    """
    Compare two circuits on the same register.

    Exhaustive mode sweeps every computational basis input (the default up to
    MAX_SWEEP_QUBITS total qubits); otherwise RANDOM_EQUIV_STATES Haar-like
    random inputs from a seeded generator. `ancilla_clean` restricts inputs to
    ancillas in |0>.
    """
    if c1.num_main != c2.num_main or c1.num_ancilla != c2.num_ancilla:
        raise RegisterMismatchError(
            f"registers differ: ({c1.num_main}+{c1.num_ancilla}) vs ({c2.num_main}+{c2.num_ancilla})"
        )
    n = c1.num_qubits
    num_anc = c1.num_ancilla
    if exhaustive is None:
        exhaustive = n <= MAX_SWEEP_QUBITS

    if exhaustive:
        indices = np.arange(2**n)
        if ancilla_clean:
            indices = indices[:: 2**num_anc]
        batches = _basis_batches(n, indices)
        checked = int(indices.size)
        mode = "basis"
    else:
        batches = iter([_random_batch(n, num_anc, RANDOM_EQUIV_STATES, ancilla_clean, make_rng(seed))])
        checked = RANDOM_EQUIV_STATES
        mode = "random"

    phase = None
    deviation = 0.0
    for cols in batches:
        out1 = evolve_columns(c1, cols, bindings)
        out2 = evolve_columns(c2, cols, bindings)
        if up_to_global_phase:
            if phase is None:
                overlap = np.vdot(out1, out2)
                phase = overlap / abs(overlap) if abs(overlap) > 1e-12 else 1.0
            out1 = out1 * phase
        deviation = max(deviation, float(np.linalg.norm(out1 - out2, axis=0).max()))

    logger.debug("equivalence check (%s, %d inputs): max deviation %.3e", mode, checked, deviation)
    return EquivalenceResult(deviation <= tol, deviation, checked, mode)
