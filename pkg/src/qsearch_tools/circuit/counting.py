from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Dict, Tuple

from .decompose import basic_size, decompose_to_basic
from .dependency import dependency_counts
from .gates import GateKind
from .ir import Circuit

LEVELS = ("logical", "basic")


@dataclass(frozen=True)
class GateCountReport:
    level: str
    per_kind: Dict[str, int]
    total: int
    oracle_calls: int
    basic_equivalent: int
    dependency: Tuple[int, ...]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dependency"] = list(self.dependency)
        return out


def basic_equivalent(circuit: Circuit) -> int:
    return sum(basic_size(g.kind, len(g.qubits)) for g in circuit.gates)


def count_gates(circuit: Circuit, level: str = "logical", with_dependency: bool = True) -> GateCountReport:
    """
    Per-kind gate counts at the requested tier.

    Logical level counts every gate once (X/CX/CCX/diffuser alike); basic level
    counts the gates of the lowered circuit. Oracle calls are counted under
    ORACLE in both.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}, expected one of {LEVELS}")
    source = circuit if level == "logical" else decompose_to_basic(circuit)
    per_kind = Counter(g.kind.value for g in source.gates)
    oracle_calls = per_kind.get(GateKind.ORACLE.value, 0)
    return GateCountReport(
        level=level,
        per_kind=dict(sorted(per_kind.items())),
        total=sum(per_kind.values()),
        oracle_calls=oracle_calls,
        basic_equivalent=basic_equivalent(circuit),
        dependency=dependency_counts(circuit) if with_dependency else (),
    )
