"""
Amplitude amplification tuned to finish with certainty.

The base circuit A is prefixed with a rotation RY(2 phi) on one fresh
deflation ancilla, which scales the good amplitude by cos(phi) so that an
integer number of rounds lands exactly on the good subspace. Good states are
(ancilla = 0) and f(main) = 1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..circuit.gates import GateKind, inverse_gate, oracle_call, ry
from ..circuit.ir import Circuit
from ..errors import RegisterMismatchError
from ..simulator.oracle import PhaseOracleSpec
from .circuits import f0_gates

logger = logging.getLogger(__name__)

CERTAIN_TOL = 1e-12
DEFAULT_AA_TAG = "O_aa"


@dataclass(frozen=True)
class AAPlan:
    a: float
    theta: float
    iterations: int
    deflation_angle: float
    base_oracle_calls: int
    total_oracle_calls: int

    def to_dict(self) -> dict:
        return asdict(self)


def plan_amplification(a: float, base_oracle_calls: int = 0) -> AAPlan:
    """
    r' = ceil(pi/(4 theta) - 1/2), theta' = pi/(4 r' + 2), phi = arccos(sin theta' / sin theta).
    Each round uses A once, A^dagger once and the good-state oracle once.
    """
    if not 0 < a <= 1 + CERTAIN_TOL:
        raise ValueError(f"success probability {a} outside (0, 1]")
    if a >= 1 - CERTAIN_TOL:
        return AAPlan(1.0, math.pi / 2, 0, 0.0, base_oracle_calls, base_oracle_calls)
    theta = math.asin(math.sqrt(a))
    rounds = max(1, math.ceil(math.pi / (4 * theta) - 0.5 - 1e-9))
    theta_prime = math.pi / (4 * rounds + 2)
    ratio = min(1.0, math.sin(theta_prime) / math.sin(theta))
    phi = math.acos(ratio)
    total = (2 * rounds + 1) * base_oracle_calls + rounds
    return AAPlan(a, theta, rounds, phi, base_oracle_calls, total)


def deflated_oracle(oracle: PhaseOracleSpec) -> PhaseOracleSpec:
    """Good predicate on main + deflation ancilla (ancilla is the last, least significant bit)."""
    mask = np.zeros(2 ** (oracle.num_qubits + 1), dtype=bool)
    mask[0::2] = oracle.mask
    return PhaseOracleSpec.from_mask(mask)


def amplify_circuit(base: Circuit, plan: AAPlan, aa_tag: str = DEFAULT_AA_TAG) -> Circuit:
    """A' followed by `plan.iterations` rounds of O', A'^dagger, F_0, A'."""
    if plan.iterations == 0:
        return base
    deflation = base.num_qubits
    prepared = (ry(deflation, 2 * plan.deflation_angle),) + base.gates
    undo = tuple(inverse_gate(g) for g in reversed(prepared))
    good = oracle_call(aa_tag, tuple(range(base.num_main)) + (deflation,))
    reflect = tuple(f0_gates(range(base.num_qubits + 1)))
    gates = list(prepared)
    for _ in range(plan.iterations):
        gates.append(good)
        gates.extend(undo)
        gates.extend(reflect)
        gates.extend(prepared)
    return Circuit(base.num_main, base.num_ancilla + 1, tuple(gates))


@dataclass(frozen=True)
class AmplifiedSearch:
    circuit: Circuit
    plan: AAPlan
    aa_tag: str
    good_oracle: Optional[PhaseOracleSpec]

    def bindings(self, base_tag: str, oracle: PhaseOracleSpec) -> dict:
        out = {base_tag: oracle}
        if self.good_oracle is not None:
            out[self.aa_tag] = self.good_oracle
        return out


def aa_wrap_certain(
    base: Circuit,
    oracle: PhaseOracleSpec,
    a: float,
    aa_tag: str = DEFAULT_AA_TAG,
    base_oracle_calls: Optional[int] = None,
) -> AmplifiedSearch:
    """
    Wrap `base` (success probability `a` on `oracle`) so the good state is reached with certainty.

    `base_oracle_calls` overrides the count of oracle-call gates in `base`, for
    bases whose oracle is inlined as gates.
    """
    if oracle.num_qubits != base.num_main:
        raise RegisterMismatchError(
            f"oracle over {oracle.num_qubits} qubits, base circuit has {base.num_main} main qubits"
        )
    if base_oracle_calls is None:
        base_calls = sum(1 for g in base.gates if g.kind is GateKind.ORACLE)
    else:
        base_calls = base_oracle_calls
    plan = plan_amplification(a, base_calls)
    logger.info(
        "amplitude amplification: a=%.6g, %d rounds, phi=%.6g, %d oracle calls",
        plan.a, plan.iterations, plan.deflation_angle, plan.total_oracle_calls,
    )
    circuit = amplify_circuit(base, plan, aa_tag)
    good = deflated_oracle(oracle) if plan.iterations else None
    return AmplifiedSearch(circuit, plan, aa_tag, good)
