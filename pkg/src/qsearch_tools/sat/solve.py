"""
End-to-end Unique k-SAT: compiled oracle, W_m with partial uncomputation,
certainty-tuned amplitude amplification.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ..circuit.counting import basic_equivalent
from ..circuit.ir import Circuit
from ..errors import DecompositionError, SearchFailure
from ..search.amplification import aa_wrap_certain
from ..search.circuits import hadamard_layer
from ..search.recurrence import alpha_recurrence
from ..search.schedule import DiffuserSchedule, schedule_from_x
from ..search.single_point import plan_single_point, run_template
from ..settings import DEFAULT_TOLERANCES, MAX_SWEEP_QUBITS
from ..simulator.statevector import marginal_probabilities, run
from ..uncompute.generic import w_as_generic
from ..uncompute.rewrite import AVERAGE_MODES, average_per_query, rewrite
from .dimacs import CnfFormula
from .oracle import classical_phase_table, compile_oracle, dependency_profile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SatSolution:
    formula: CnfFormula
    assignment: int
    success_probability: float
    simulation_mode: str
    telemetry: Dict[str, object] = field(default_factory=dict)

    @property
    def bits(self) -> str:
        return self.formula.assignment_string(self.assignment)

    def to_dict(self) -> dict:
        return {
            "assignment": self.bits,
            "success_probability": self.success_probability,
            "simulation_mode": self.simulation_mode,
            "telemetry": self.telemetry,
        }


def solve_unique_sat(
    formula: CnfFormula,
    x: int = 1,
    schedule: Optional[DiffuserSchedule] = None,
    max_direct_qubits: int = MAX_SWEEP_QUBITS,
) -> SatSolution:
    """
    Find the unique model of `formula`.

    The whole compiled circuit is simulated when it fits in `max_direct_qubits`.
    Larger instances check the compiled oracle gate by gate against brute-force
    clause evaluation and then simulate the search with the predicate oracle;
    the rewrite leaves the search unitary unchanged on clean ancillas, so both
    modes measure the same distribution.
    """
    n = formula.num_vars
    compiled = compile_oracle(formula)
    profile = dependency_profile(compiled)
    oracle = compiled.spec()
    schedule = schedule or schedule_from_x(n, x)

    num_ancilla = compiled.layout.num_ancilla
    V = w_as_generic(schedule, num_ancilla=num_ancilla)
    rewritten = rewrite(V, compiled.decomposition)
    report = rewritten.report

    base = Circuit(n, num_ancilla, tuple(hadamard_layer(range(n))) + rewritten.circuit.gates)
    trace = alpha_recurrence(schedule)
    search = aa_wrap_certain(base, oracle, trace.success_probability, base_oracle_calls=V.ell)
    total_qubits = search.circuit.num_qubits

    if total_qubits <= max_direct_qubits:
        mode = "circuit"
        bindings = {search.aa_tag: search.good_oracle} if search.good_oracle is not None else {}
        state = run(search.circuit, bindings)
        probs = marginal_probabilities(state, range(n))
        dirty = 1.0 - float(marginal_probabilities(state, range(n, n + num_ancilla))[0]) if num_ancilla else 0.0
        if dirty > DEFAULT_TOLERANCES.circuit:
            raise DecompositionError(f"ancillas left dirty with probability {dirty:.3e}")
    else:
        mode = "predicate"
        phases, restored = classical_phase_table(compiled)
        if not restored or not np.array_equal(phases, oracle.mask):
            raise DecompositionError("compiled oracle disagrees with clause evaluation")
        probs = run_template(plan_single_point(n, x, schedule, "W"), oracle)
    logger.info("ksat n=%d: %d qubits, simulated in %s mode", n, total_qubits, mode)

    success = float(min(1.0, probs[oracle.mask].sum()))
    assignment = int(np.argmax(probs))
    if success < 1 - DEFAULT_TOLERANCES.detection or oracle.num_marked != 1:
        raise SearchFailure(
            f"formula has {oracle.num_marked} models; success probability {success:.6g}"
        )

    plan = search.plan
    unrewritten = report.unrewritten_per_query
    telemetry = {
        "simulation_mode": mode,
        "schedule": list(schedule.k),
        "ell": V.ell,
        "aa_rounds": plan.iterations,
        "oracle_queries": plan.total_oracle_calls,
        "total_qubits": total_qubits,
        "num_ancilla": num_ancilla,
        "D_u": compiled.D_u,
        "D_p": compiled.D_p,
        "gate_bound": compiled.gate_bound,
        "rewrite": report.to_dict(),
        "average_per_query": {mode_: average_per_query(report, mode_) for mode_ in AVERAGE_MODES},
        "unrewritten_per_query": unrewritten,
        "savings_ratio": average_per_query(report, "exact") / unrewritten,
        "dependency": profile.to_dict(),
        "basic_gates": basic_equivalent(search.circuit),
    }
    return SatSolution(formula, assignment, success, mode, telemetry)
