"""
Single marked element search: H^n, then W_m (or D_m), then certainty-tuned
amplitude amplification.

The planned circuit depends only on (n, schedule, family), so it is built once
per shape and rebound to each oracle.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from ..circuit.counting import basic_equivalent
from ..circuit.gates import GateKind
from ..circuit.ir import Circuit
from ..errors import RegisterMismatchError, SearchFailure
from ..settings import DEFAULT_TOLERANCES
from ..simulator.oracle import PhaseOracleSpec
from ..simulator.statevector import marginal_probabilities, run
from .amplification import DEFAULT_AA_TAG, AAPlan, amplify_circuit, deflated_oracle, plan_amplification
from .circuits import DEFAULT_ORACLE_TAG, d_gates, hadamard_layer, w_gates
from .recurrence import (
    AmplitudeTrace,
    alpha_recurrence,
    beta_recurrence,
    d_family_query_bound,
    single_point_query_bound,
)
from .schedule import DiffuserSchedule, schedule_from_x

logger = logging.getLogger(__name__)

FAMILIES = ("W", "D")


@dataclass(frozen=True)
class SearchTemplate:
    n: int
    x: int
    family: str
    schedule: DiffuserSchedule
    trace: AmplitudeTrace
    plan: AAPlan
    base: Circuit
    circuit: Circuit
    oracle_calls: int
    non_oracle_basic_gates: int

    @property
    def query_bound(self) -> float:
        if self.family == "W":
            return single_point_query_bound(self.n, self.x, self.schedule.m)
        return d_family_query_bound(self.n, self.x, self.schedule.m)


def base_circuit(schedule: DiffuserSchedule, family: str = "W", oracle_tag: str = DEFAULT_ORACLE_TAG) -> Circuit:
    if family not in FAMILIES:
        raise ValueError(f"unknown search family {family!r}, expected one of {FAMILIES}")
    body = w_gates(schedule, oracle_tag) if family == "W" else d_gates(schedule, oracle_tag)
    return Circuit(schedule.n, 0, tuple(hadamard_layer(range(schedule.n)) + body))


def _trace(schedule: DiffuserSchedule, family: str) -> AmplitudeTrace:
    return alpha_recurrence(schedule) if family == "W" else beta_recurrence(schedule)


@lru_cache(maxsize=64)
def plan_single_point(
    n: int,
    x: int = 1,
    schedule: Optional[DiffuserSchedule] = None,
    family: str = "W",
) -> SearchTemplate:
    schedule = schedule or schedule_from_x(n, x)
    if schedule.n != n:
        raise RegisterMismatchError(f"schedule {schedule} covers {schedule.n} qubits, search has {n}")
    base = base_circuit(schedule, family)
    trace = _trace(schedule, family)
    plan = plan_amplification(trace.success_probability, sum(1 for g in base.gates if g.kind is GateKind.ORACLE))
    circuit = amplify_circuit(base, plan, DEFAULT_AA_TAG)
    oracle_calls = sum(1 for g in circuit.gates if g.kind is GateKind.ORACLE)
    logger.info("single point plan n=%d k=%s family=%s: %d oracle calls", n, schedule, family, oracle_calls)
    return SearchTemplate(
        n=n,
        x=x,
        family=family,
        schedule=schedule,
        trace=trace,
        plan=plan,
        base=base,
        circuit=circuit,
        oracle_calls=oracle_calls,
        non_oracle_basic_gates=basic_equivalent(circuit),
    )


@dataclass(frozen=True)
class SinglePointResult:
    element: int
    success_probability: float
    template: SearchTemplate

    @property
    def oracle_calls(self) -> int:
        return self.template.oracle_calls

    @property
    def non_oracle_basic_gates(self) -> int:
        return self.template.non_oracle_basic_gates

    def to_dict(self) -> dict:
        t = self.template
        return {
            "element": self.element,
            "success_probability": self.success_probability,
            "schedule": list(t.schedule.k),
            "family": t.family,
            "alpha_trace": list(t.trace.values),
            "aa_plan": t.plan.to_dict(),
            "oracle_calls": t.oracle_calls,
            "query_bound": t.query_bound,
            "basic_gates": t.non_oracle_basic_gates,
        }


def run_template(template: SearchTemplate, oracle: PhaseOracleSpec) -> np.ndarray:
    if oracle.num_qubits != template.n:
        raise RegisterMismatchError(f"oracle over {oracle.num_qubits} qubits, search has {template.n}")
    bindings = {DEFAULT_ORACLE_TAG: oracle}
    if template.plan.iterations:
        bindings[DEFAULT_AA_TAG] = deflated_oracle(oracle)
    state = run(template.circuit, bindings)
    return marginal_probabilities(state, range(template.n))


def single_point(
    oracle: PhaseOracleSpec,
    n: Optional[int] = None,
    x: int = 1,
    schedule: Optional[DiffuserSchedule] = None,
    family: str = "W",
    rng: Optional[np.random.Generator] = None,
    strict: bool = True,
) -> SinglePointResult:
    """
    Find the element marked by `oracle`.

    Without `rng` the most probable outcome is reported; with one, the outcome
    is sampled. In strict mode a success probability below the detection
    tolerance raises SearchFailure (the oracle does not mark exactly one element).
    """
    n = oracle.num_qubits if n is None else n
    template = plan_single_point(n, x, schedule, family)
    probs = run_template(template, oracle)
    success = float(min(1.0, probs[oracle.mask].sum()))
    if rng is None:
        element = int(np.argmax(probs))
    else:
        element = int(rng.choice(probs.size, p=probs / probs.sum()))
    if strict and success < 1 - DEFAULT_TOLERANCES.detection:
        raise SearchFailure(
            f"success probability {success:.6g} below threshold; oracle marks {oracle.num_marked} elements"
        )
    return SinglePointResult(element, success, template)
