"""
Partial uncomputation of generic oracle circuits.

Between two oracle calls only the O_u gates that depend on the next factor's
domain have to be undone and redone. The rewritten circuit in time order is

    O_u, [O_p, O_s1^dagger, U_1, O_s1], ..., [O_p, O_sl^dagger, U_l, O_sl], O_u^dagger

where O_sj holds the gates of O_u depending on any qubit of d(j).
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..circuit.dependency import dependency_counts, depends_on_any
from ..circuit.ir import Circuit, inverse
from ..errors import RegisterMismatchError
from ..simulator.oracle import PhaseOracleSpec
from .decomposition import UncomputableDecomposition
from .generic import GenericOracleCircuit

logger = logging.getLogger(__name__)

AVERAGE_MODES = ("exact", "weighted", "uniform")


def split_by_dependency(O_u: Circuit, s: Iterable[int]) -> Tuple[Circuit, Circuit]:
    """(gates depending on s, the rest), both in their original order."""
    s = tuple(s)
    for q in s:
        if not 0 <= q < O_u.num_main:
            raise RegisterMismatchError(f"qubit {q} is not in the main register of {O_u.num_main}")
    dependent = depends_on_any(O_u, s) if s else frozenset()
    inside = tuple(g for i, g in enumerate(O_u.gates) if i in dependent)
    outside = tuple(g for i, g in enumerate(O_u.gates) if i not in dependent)
    return Circuit(O_u.num_main, O_u.num_ancilla, inside), Circuit(O_u.num_main, O_u.num_ancilla, outside)


@dataclass(frozen=True)
class RewriteReport:
    D_u: int
    D_p: int
    ell: int
    dbar: Tuple[int, ...]
    domain_sizes: Tuple[int, ...]
    qubit_dependency: Tuple[int, ...]
    participation: Tuple[int, ...]
    total_oracle_gates: int
    emitted_oracle_gates: int

    @property
    def average_per_query(self) -> float:
        return average_per_query(self, "exact")

    @property
    def unrewritten_per_query(self) -> int:
        return 2 * self.D_u + self.D_p

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("dbar", "domain_sizes", "qubit_dependency", "participation"):
            out[key] = list(out[key])
        out["average_per_query"] = {mode: average_per_query(self, mode) for mode in AVERAGE_MODES}
        out["unrewritten_per_query"] = self.unrewritten_per_query
        return out


@dataclass(frozen=True)
class RewriteResult:
    circuit: Circuit
    report: RewriteReport


def _register(V: GenericOracleCircuit, dec: UncomputableDecomposition) -> int:
    if dec.num_main != V.num_main:
        raise RegisterMismatchError(f"decomposition has {dec.num_main} main qubits, circuit has {V.num_main}")
    return max(V.num_ancilla, dec.num_ancilla)


def _dependent_parts(V: GenericOracleCircuit, O_u: Circuit) -> List[Circuit]:
    cache: Dict[Tuple[int, ...], Circuit] = {}
    parts = []
    for domain in V.domains:
        if domain not in cache:
            cache[domain] = split_by_dependency(O_u, domain)[0]
        parts.append(cache[domain])
    return parts


def rewrite(
    V: GenericOracleCircuit,
    dec: UncomputableDecomposition,
    oracle: Optional[PhaseOracleSpec] = None,
) -> RewriteResult:
    """
    Emit the partially uncomputed circuit. With `oracle`, the decomposition is
    first checked against it.
    """
    if oracle is not None:
        dec.validate(oracle)
    num_ancilla = _register(V, dec)
    O_u = dec.O_u.widened(num_ancilla)
    parts = _dependent_parts(V, O_u)

    gates = list(O_u.gates)
    emitted = len(O_u)
    for factor, part in zip(V.factors, parts):
        segment = dec.O_p.gates + inverse(part).gates
        gates.extend(segment)
        gates.extend(factor.gates)
        gates.extend(part.gates)
        emitted += len(segment) + len(part)
    tail = inverse(O_u).gates
    gates.extend(tail)
    emitted += len(tail)

    dbar = tuple(len(p) for p in parts)
    total = 2 * dec.D_u + V.ell * dec.D_p + 2 * sum(dbar)
    report = RewriteReport(
        D_u=dec.D_u,
        D_p=dec.D_p,
        ell=V.ell,
        dbar=dbar,
        domain_sizes=tuple(len(d) for d in V.domains),
        qubit_dependency=dependency_counts(O_u),
        participation=V.participation(),
        total_oracle_gates=total,
        emitted_oracle_gates=emitted,
    )
    if total != emitted:
        raise AssertionError(f"rewrite accounting drifted: formula {total}, emitted {emitted}")
    logger.info(
        "rewrite l=%d D_u=%d D_p=%d: %d oracle-derived gates (%.3f per query, %d unrewritten)",
        V.ell, dec.D_u, dec.D_p, total, report.average_per_query, report.unrewritten_per_query,
    )
    return RewriteResult(Circuit(V.num_main, num_ancilla, tuple(gates)), report)


# ----------------------------------------------------------------------
# STEP BY STEP
# ----------------------------------------------------------------------

Segment = Tuple[str, Circuit]


@dataclass(frozen=True)
class StepwiseRewrite:
    steps: Tuple[Tuple[str, Tuple[Segment, ...]], ...]
    circuit: Circuit

    def labels(self, step: str) -> List[str]:
        for name, segments in self.steps:
            if name == step:
                return [label for label, _ in segments]
        raise KeyError(step)


def _flatten(num_main: int, num_ancilla: int, segments: Iterable[Segment]) -> Circuit:
    gates = []
    for _, part in segments:
        gates.extend(part.gates)
    return Circuit(num_main, num_ancilla, tuple(gates))


def rewrite_stepwise(V: GenericOracleCircuit, dec: UncomputableDecomposition) -> StepwiseRewrite:
    """
    The rewrite as five segment manipulations: inline the oracle, append an
    identity O_u O_u^dagger after the last factor, split every O_u^dagger U_j O_u
    by dependency on d(j), commute the independent part past U_j, and cancel it.
    """
    num_ancilla = _register(V, dec)
    O_u = dec.O_u.widened(num_ancilla)
    O_p = dec.O_p.widened(num_ancilla)
    O_u_dg = inverse(O_u)
    steps = []

    inlined: List[Segment] = []
    for j, factor in enumerate(V.factors, start=1):
        inlined += [("O_u", O_u), ("O_p", O_p), ("O_u^dg", O_u_dg), (f"U_{j}", factor.widened(num_ancilla))]
    steps.append(("inline", tuple(inlined)))

    padded = inlined + [("O_u", O_u), ("O_u^dg", O_u_dg)]
    steps.append(("append_identity", tuple(padded)))

    # padded = O_u, (O_p, O_u^dg, U_j, O_u) for each j, O_u^dg
    split: List[Segment] = [padded[0]]
    commuted: List[Segment] = [padded[0]]
    cancelled: List[Segment] = [padded[0]]
    for j, domain in enumerate(V.domains, start=1):
        dep, rest = split_by_dependency(O_u, domain)
        factor = padded[4 * j - 1]
        split += [
            ("O_p", O_p),
            (f"O_s{j}^dg", inverse(dep)), (f"Orest_s{j}^dg", inverse(rest)),
            factor,
            (f"Orest_s{j}", rest), (f"O_s{j}", dep),
        ]
        commuted += [
            ("O_p", O_p),
            (f"O_s{j}^dg", inverse(dep)), factor,
            (f"Orest_s{j}^dg", inverse(rest)), (f"Orest_s{j}", rest),
            (f"O_s{j}", dep),
        ]
        cancelled += [("O_p", O_p), (f"O_s{j}^dg", inverse(dep)), factor, (f"O_s{j}", dep)]
    split.append(padded[-1])
    commuted.append(padded[-1])
    cancelled.append(padded[-1])
    steps += [("split", tuple(split)), ("commute", tuple(commuted)), ("cancel", tuple(cancelled))]

    return StepwiseRewrite(tuple(steps), _flatten(V.num_main, num_ancilla, cancelled))


# ----------------------------------------------------------------------
# PER-QUERY AVERAGES
# ----------------------------------------------------------------------

def average_per_query(report: RewriteReport, mode: str = "exact") -> float:
    """
    exact:    D_p + 2 D_u / l + 2 sum_j Dbar_d(j) / l
    weighted: D_p + 2 (D_u + sum_j sum_{i in d(j)} D_i) / l
    uniform:  D_p + 2 D_u / l + 2 D sum_j |d(j)| / l, with D the mean of D_i
    """
    ell = report.ell
    if mode == "exact":
        return report.D_p + 2 * report.D_u / ell + 2 * sum(report.dbar) / ell
    if mode == "weighted":
        spread = sum(w * d for w, d in zip(report.participation, report.qubit_dependency))
        return report.D_p + 2 * (report.D_u + spread) / ell
    if mode == "uniform":
        n = len(report.qubit_dependency)
        mean = sum(report.qubit_dependency) / n if n else 0.0
        return report.D_p + 2 * report.D_u / ell + 2 * mean * sum(report.domain_sizes) / ell
    raise ValueError(f"unknown averaging mode {mode!r}, expected one of {AVERAGE_MODES}")


def oppositely_ordered(report: RewriteReport) -> bool:
    """
    True when qubits that sit in more domains never have more dependent gates.
    Under this condition the weighted average is at most the uniform one.
    """
    pairs = list(zip(report.participation, report.qubit_dependency))
    return all((w1 - w2) * (d1 - d2) <= 0 for i, (w1, d1) in enumerate(pairs) for w2, d2 in pairs[i + 1:])


def unrewritten_per_query(dec: UncomputableDecomposition) -> int:
    return 2 * dec.D_u + dec.D_p
