from __future__ import annotations

import os
from dataclasses import dataclass

# ----------------------------------------------------------------------
# CONFIGURATION VIA ENV
# ----------------------------------------------------------------------

OUTPUT_DIR = os.environ.get("QSEARCH_OUTPUT_DIR", "/tmp/qsearch")
REPORT_BUCKET = os.environ.get("QSEARCH_BUCKET")  # e.g. my-lab-artifacts
REPORT_PREFIX = os.environ.get("QSEARCH_PREFIX", "qsearch/reports")
LOG_LEVEL = os.environ.get("QSEARCH_LOG_LEVEL", "WARNING")

# ----------------------------------------------------------------------
# SIMULATION LIMITS
# ----------------------------------------------------------------------

# full basis sweep in unitary_equiv, direct simulation of compiled SAT pipelines
MAX_SWEEP_QUBITS = 14
RANDOM_EQUIV_STATES = 64
MAX_DENSE_QUBITS = 26

# exhaustive hash enumeration: kn + k
ENUMERATION_BUDGET_BITS = 20


@dataclass(frozen=True)
class Tolerances:
    single_gate: float = 1e-12
    circuit: float = 1e-9
    success: float = 1e-9
    detection: float = 1e-6

    def with_circuit(self, tol: float) -> "Tolerances":
        return Tolerances(self.single_gate, tol, tol, self.detection)


DEFAULT_TOLERANCES = Tolerances()
