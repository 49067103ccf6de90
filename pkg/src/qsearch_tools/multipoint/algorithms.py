"""
Search with several marked elements by hashing the space down to a kernel
that, with constant probability, holds exactly one of them.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from ..circuit.ir import Circuit
from ..gf2.hashing import KernelParam, enumerate_hashes, hash_value_table, parametrize_kernel, sample_hash
from ..search.single_point import SearchTemplate, plan_single_point, run_template
from ..simulator.oracle import PhaseOracleSpec
from ..uncompute.generic import w_as_generic
from ..uncompute.rewrite import split_by_dependency
from .restricted import restrict_oracle
from .telemetry import SearchTelemetry

logger = logging.getLogger(__name__)

SINGLE_TRIAL_BOUND = 1 / 16


def hash_width(num_marked: int) -> int:
    """k = 1 + ceil(log2 K)."""
    if num_marked < 1:
        raise ValueError("at least one element must be marked")
    return 1 + (num_marked - 1).bit_length()


def loader_gate_cost(loader: Circuit, template: SearchTemplate) -> int:
    """
    Loader gates spent around the oracle calls of one planned search, with the
    loader treated as the computing part of each call and partially uncomputed
    between W_m factors. Each good-state check of amplification loads twice.
    """
    size = len(loader)
    if size == 0:
        return 0
    base_calls = template.plan.base_oracle_calls
    if template.family == "W" and base_calls:
        V = w_as_generic(template.schedule)
        reloads = sum(len(split_by_dependency(loader, domain)[0]) for domain in V.domains)
        per_base = 2 * size + 2 * reloads
    else:
        per_base = 2 * size * base_calls
    rounds = template.plan.iterations
    return (2 * rounds + 1) * per_base + rounds * 2 * size


def _classical_pick(oracle: PhaseOracleSpec, n: int, rng: np.random.Generator, telemetry: SearchTelemetry) -> Optional[int]:
    candidate = int(rng.integers(0, 2**n))
    telemetry.check()
    return candidate if oracle.is_marked(candidate) else None


def multi_point(
    oracle: PhaseOracleSpec,
    n: Optional[int],
    k: int,
    rng: np.random.Generator,
    x: int = 1,
    telemetry: Optional[SearchTelemetry] = None,
) -> Optional[int]:
    """One trial with known k. Returns a verified marked element or None."""
    n = oracle.num_qubits if n is None else n
    telemetry = telemetry if telemetry is not None else SearchTelemetry()
    telemetry.trial()
    if k >= n - 2:
        logger.debug("k=%d >= n-2=%d: classical pick", k, n - 2)
        return _classical_pick(oracle, n, rng, telemetry)

    g = parametrize_kernel(sample_hash(n, k, rng))
    if g is None or g.d >= n - k + 2:
        return None
    if g.d == 0:
        candidate = g.apply(0)
        telemetry.check()
        return candidate if oracle.is_marked(candidate) else None

    restricted = restrict_oracle(oracle, g)
    template = plan_single_point(g.d, x)
    telemetry.add(template.oracle_calls, template.non_oracle_basic_gates + loader_gate_cost(restricted.loader, template))
    probs = run_template(template, restricted.predicate_spec)
    index = int(rng.choice(probs.size, p=probs / probs.sum()))
    candidate = g.apply(index)
    telemetry.check()
    return candidate if oracle.is_marked(candidate) else None


def amplification_trials(p: float) -> int:
    """Smallest t with (15/16)^t <= 1 - p."""
    if not 0 < p < 1:
        raise ValueError(f"target probability {p} outside (0, 1)")
    return max(1, math.ceil(math.log(1 - p) / math.log(1 - SINGLE_TRIAL_BOUND) - 1e-12))


def multi_point_amplified(
    oracle: PhaseOracleSpec,
    n: Optional[int],
    k: int,
    p: float,
    rng: np.random.Generator,
    x: int = 1,
    telemetry: Optional[SearchTelemetry] = None,
) -> Optional[int]:
    telemetry = telemetry if telemetry is not None else SearchTelemetry()
    for _ in range(amplification_trials(p)):
        found = multi_point(oracle, n, k, rng, x, telemetry)
        if found is not None:
            return found
    return None


@dataclass(frozen=True)
class UnknownSearchResult:
    element: Optional[int]
    k: Optional[int]
    telemetry: SearchTelemetry

    def to_dict(self) -> dict:
        return {"element": self.element, "k": self.k, "telemetry": self.telemetry.to_dict()}


def multi_point_unknown(
    oracle: PhaseOracleSpec,
    n: Optional[int],
    p: float,
    rng: np.random.Generator,
    x: int = 1,
    seed: Optional[int] = None,
) -> UnknownSearchResult:
    """Descending sweep over i = n+2..2 and j = n+2..i of the amplified trial with k = j."""
    n = oracle.num_qubits if n is None else n
    if not 2 * (1 - p) ** 2 < 1:
        raise ValueError(f"p={p} must satisfy 2 (1 - p)^2 < 1")
    telemetry = SearchTelemetry(seed=seed)
    for i in range(n + 2, 1, -1):
        for j in range(n + 2, i - 1, -1):
            found = multi_point_amplified(oracle, n, j, p, rng, x, telemetry)
            if found is not None:
                logger.info("found marked element at k=%d after %d oracle queries", j, telemetry.oracle_queries)
                return UnknownSearchResult(found, j, telemetry)
    logger.warning("unknown-count search exhausted its loops without a marked element")
    return UnknownSearchResult(None, None, telemetry)


# ----------------------------------------------------------------------
# EXACT PROBABILITIES
# ----------------------------------------------------------------------

def _kernel_success(oracle: PhaseOracleSpec, g: KernelParam, x: int) -> float:
    if g.d == 0:
        return float(oracle.is_marked(g.apply(0)))
    restricted = restrict_oracle(oracle, g)
    probs = run_template(plan_single_point(g.d, x), restricted.predicate_spec)
    return float(probs[restricted.predicate_spec.mask].sum())


def multi_point_success_probability(oracle: PhaseOracleSpec, n: Optional[int], k: int, x: int = 1) -> float:
    """Success probability of one trial, averaged over the whole hash family."""
    n = oracle.num_qubits if n is None else n
    if k >= n - 2:
        return oracle.num_marked / 2**n
    total = 0.0
    members = 0
    for h in enumerate_hashes(n, k):
        members += 1
        g = parametrize_kernel(h)
        if g is None or g.d >= n - k + 2:
            continue
        total += _kernel_success(oracle, g, x)
    return total / members


def unique_intersection_probability(marked: Iterable[int], n: int, k: int) -> Fraction:
    """Fraction of the hash family whose kernel holds exactly one of `marked`."""
    columns = sorted(set(int(v) for v in marked))
    table = hash_value_table(n, k)
    hits = (table[:, columns] == 0).sum(axis=1)
    return Fraction(int((hits == 1).sum()), table.shape[0])
