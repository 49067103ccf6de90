from .counting import GateCountReport, basic_equivalent, count_gates
from .decompose import basic_size, decompose_to_basic
from .dependency import dependency_counts, depends_on, depends_on_any
from .gates import (
    Gate,
    GateKind,
    Tier,
    acts_on,
    ccx,
    cx,
    diffuser,
    h,
    inverse_gate,
    mcz,
    one_qubit,
    oracle_call,
    ry,
    x,
    z,
)
from .ir import Circuit, compose, empty, inverse, remap

__all__ = [
    "Circuit",
    "Gate",
    "GateCountReport",
    "GateKind",
    "Tier",
    "acts_on",
    "basic_equivalent",
    "basic_size",
    "ccx",
    "compose",
    "count_gates",
    "cx",
    "decompose_to_basic",
    "dependency_counts",
    "depends_on",
    "depends_on_any",
    "diffuser",
    "empty",
    "h",
    "inverse",
    "inverse_gate",
    "mcz",
    "one_qubit",
    "oracle_call",
    "remap",
    "ry",
    "x",
    "z",
]
