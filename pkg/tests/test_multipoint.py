from fractions import Fraction

import numpy as np
import pytest

from qsearch_tools.circuit import Circuit, ccx, oracle_call, x, z
from qsearch_tools.errors import RegisterMismatchError
from qsearch_tools.gf2 import BitMatrix, KernelParam, wilson_interval
from qsearch_tools.multipoint import algorithms
from qsearch_tools.multipoint import (
    SearchTelemetry,
    amplification_trials,
    build_Dg,
    hash_width,
    loader_gate_cost,
    multi_point,
    multi_point_amplified,
    multi_point_success_probability,
    multi_point_unknown,
    restrict_oracle,
    unique_intersection_probability,
)
from qsearch_tools.search import plan_single_point
from qsearch_tools.seeding import make_rng, spawn_rngs
from qsearch_tools.simulator import PhaseOracleSpec, marginal_probabilities, run, unitary_equiv
from qsearch_tools.uncompute import UncomputableDecomposition


def diagonal_map(p):
    """g(i) = (i, i) + p on two bits."""
    return KernelParam(BitMatrix.from_rows([[1], [1]]), np.array(p, dtype=np.uint8), (0,))


def random_marked(n, count, seed):
    return sorted(make_rng(seed).choice(2**n, size=count, replace=False).tolist())


# ----------------------------------------------------------------------
# loader and restricted oracle
# ----------------------------------------------------------------------

def test_loader_gates():
    loader = build_Dg(diagonal_map([0, 1]))
    assert (loader.num_main, loader.num_ancilla) == (1, 2)
    assert [(g.kind.value, g.qubits) for g in loader.gates] == [("CX", (0, 1)), ("CX", (0, 2)), ("X", (2,))]


@pytest.mark.parametrize("first, expected", [(0, 0b001), (1, 0b110)])
def test_loader_writes_image(first, expected):
    loader = build_Dg(diagonal_map([0, 1]))
    prep = (x(0),) if first else ()
    state = run(Circuit(1, 2, prep + loader.gates))
    assert int(np.argmax(marginal_probabilities(state, range(3)))) == expected


def test_restricted_oracle_marks_preimage():
    restricted = restrict_oracle(PhaseOracleSpec.from_marked(2, [1]), diagonal_map([0, 1]))
    assert restricted.predicate_spec.num_qubits == 1
    assert restricted.marked() == [0]
    assert restricted.total_qubits == 3
    with pytest.raises(RegisterMismatchError):
        restrict_oracle(PhaseOracleSpec.from_marked(3, [1]), diagonal_map([0, 1]))


def test_restricted_circuit_matches_full_register_phase():
    base = PhaseOracleSpec.from_marked(2, [1, 3])
    restricted = restrict_oracle(base, diagonal_map([0, 1]))
    direct = Circuit(1, 2, (oracle_call("G", (0, 1, 2)),))
    bindings = {"O": base, "G": restricted.full_register_spec}
    assert unitary_equiv(restricted.circuit("O"), direct, bindings).equivalent


def test_lifted_decomposition_implements_restricted_oracle():
    dec = UncomputableDecomposition(Circuit(2, 1, (ccx(0, 1, 2),)), Circuit(2, 1, (z(2),)))
    oracle = PhaseOracleSpec.from_marked(2, [3]).with_decomposition(dec)
    restricted = restrict_oracle(oracle, diagonal_map([0, 0]))
    assert restricted.marked() == [1]
    lifted = restricted.decomposition
    assert (lifted.num_main, lifted.num_ancilla) == (1, 3)
    assert lifted.D_u == 2 + 1
    assert lifted.validate(restricted.predicate_spec).equivalent


# ----------------------------------------------------------------------
# parameters
# ----------------------------------------------------------------------

@pytest.mark.parametrize("count, k", [(1, 1), (2, 2), (3, 3), (4, 3), (5, 4), (8, 4), (9, 5)])
def test_hash_width(count, k):
    assert hash_width(count) == k


def test_hash_width_needs_marked_elements():
    with pytest.raises(ValueError):
        hash_width(0)


def test_amplification_trials():
    assert amplification_trials(0.5) == 11
    assert (15 / 16) ** amplification_trials(0.9) <= 0.1
    with pytest.raises(ValueError):
        amplification_trials(1.0)


def test_loader_cost_is_zero_without_gates():
    assert loader_gate_cost(Circuit(2, 3), plan_single_point(2)) == 0


# ----------------------------------------------------------------------
# exact probabilities
# ----------------------------------------------------------------------

@pytest.mark.parametrize("count", [1, 2, 3, 5, 8])
def test_single_trial_success_probability(count):
    marked = random_marked(4, count, seed=count)
    oracle = PhaseOracleSpec.from_marked(4, marked)
    assert multi_point_success_probability(oracle, 4, hash_width(count)) >= 1 / 16


def test_single_marked_element_uses_hashed_search():
    oracle = PhaseOracleSpec.from_marked(5, [9])
    probability = multi_point_success_probability(oracle, 5, 1)
    assert 1 / 16 <= probability <= 1


@pytest.mark.parametrize("count", [1, 2, 3, 4, 5, 8])
def test_unique_intersection(count):
    marked = random_marked(4, count, seed=100 + count)
    assert unique_intersection_probability(marked, 4, hash_width(count)) >= Fraction(1, 8)


def test_unique_intersection_of_single_element():
    assert unique_intersection_probability([5], 3, 1) == Fraction(1, 2)


# ----------------------------------------------------------------------
# sampled trials
# ----------------------------------------------------------------------

def test_classical_pick_charges_one_query():
    oracle = PhaseOracleSpec.from_marked(4, [0, 5, 9])
    telemetry = SearchTelemetry()
    found = multi_point(oracle, None, 3, make_rng(1), telemetry=telemetry)
    assert found is None or found in (0, 5, 9)
    assert (telemetry.trials, telemetry.classical_checks, telemetry.oracle_queries) == (1, 1, 1)


def test_amplified_trials_only_return_marked_elements():
    marked = random_marked(6, 3, seed=5)
    oracle = PhaseOracleSpec.from_marked(6, marked)
    rng = make_rng(2024)
    telemetry = SearchTelemetry()
    found = [multi_point_amplified(oracle, 6, hash_width(3), 0.5, rng, telemetry=telemetry) for _ in range(20)]
    assert any(v is not None for v in found)
    assert all(v in marked for v in found if v is not None)
    assert telemetry.trials >= 20
    assert telemetry.oracle_queries >= telemetry.classical_checks
    assert telemetry.non_oracle_basic_gates > 0


def test_restricted_search_is_always_simulated(monkeypatch):
    searched = []
    real = algorithms.run_template

    def counting(template, oracle):
        searched.append(oracle.num_marked)
        return real(template, oracle)

    monkeypatch.setattr(algorithms, "run_template", counting)
    oracle = PhaseOracleSpec.from_marked(6, [37])
    rng = make_rng(8)
    telemetry = SearchTelemetry()
    found = [multi_point(oracle, 6, 1, rng, telemetry=telemetry) for _ in range(12)]
    assert 37 in found
    assert len(searched) >= 10 and 1 in searched
    assert telemetry.trials == 12


def test_exact_probability_simulates_every_kernel(monkeypatch):
    searched = []
    real = algorithms.run_template

    def counting(template, oracle):
        searched.append(oracle.num_marked)
        return real(template, oracle)

    monkeypatch.setattr(algorithms, "run_template", counting)
    # half of H_{6,1} keeps 5 in its kernel and the kernel search is certain
    assert multi_point_success_probability(PhaseOracleSpec.from_marked(6, [5]), 6, 1) == pytest.approx(0.5, abs=1e-8)
    assert searched.count(1) == 64


def test_telemetry_only_accumulates():
    telemetry = SearchTelemetry()
    with pytest.raises(ValueError):
        telemetry.add(queries=-1)
    other = SearchTelemetry(oracle_queries=3, trials=1)
    telemetry.merge(other)
    assert telemetry.to_dict()["oracle_queries"] == 3


def test_unknown_count_search_finds_marked_element():
    marked = random_marked(5, 4, seed=9)
    result = multi_point_unknown(PhaseOracleSpec.from_marked(5, marked), None, 0.5, make_rng(77), seed=77)
    assert result.element in marked
    assert 2 <= result.k <= 7
    assert result.to_dict()["telemetry"]["seed"] == 77


def test_unknown_count_search_rejects_low_target():
    with pytest.raises(ValueError, match="2 \\(1 - p\\)"):
        multi_point_unknown(PhaseOracleSpec.from_marked(3, [1]), None, 0.2, make_rng(0))


@pytest.mark.slow
@pytest.mark.parametrize("count", [1, 5])
def test_single_trial_frequency_on_ten_qubits(count):
    marked = random_marked(10, count, seed=200 + count)
    oracle = PhaseOracleSpec.from_marked(10, marked)
    rng = make_rng(300 + count)
    trials = 1000
    hits = sum(multi_point(oracle, 10, hash_width(count), rng) is not None for _ in range(trials))
    _, high = wilson_interval(hits, trials)
    assert high >= 1 / 16


@pytest.mark.slow
def test_unknown_count_queries_scale_with_density():
    n = 12
    ratios = {}
    means = []
    for count in (1, 4, 16, 64):
        marked = random_marked(n, count, seed=count)
        oracle = PhaseOracleSpec.from_marked(n, marked)
        queries = []
        for run_rng in spawn_rngs(4000 + count, 200):
            result = multi_point_unknown(oracle, n, 0.5, run_rng)
            assert result.element in marked
            queries.append(result.telemetry.oracle_queries)
        means.append(np.mean(queries))
        ratios[count] = means[-1] / np.sqrt(2**n / count)
    assert means == sorted(means, reverse=True)
    assert max(ratios.values()) <= 4 * min(ratios.values())
