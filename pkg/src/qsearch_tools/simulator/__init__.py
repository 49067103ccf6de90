from .equivalence import EquivalenceResult, unitary_equiv
from .oracle import PhaseOracleSpec
from .statevector import (
    Statevector,
    amplitude_at,
    apply_circuit,
    apply_gate,
    evolve_columns,
    marginal_probabilities,
    run,
    success_probability,
)

__all__ = [
    "EquivalenceResult",
    "PhaseOracleSpec",
    "Statevector",
    "amplitude_at",
    "apply_circuit",
    "apply_gate",
    "evolve_columns",
    "marginal_probabilities",
    "run",
    "success_probability",
    "unitary_equiv",
]
