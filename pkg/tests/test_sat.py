import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsearch_tools.circuit import Circuit, h
from qsearch_tools.errors import DimacsError, SearchFailure
from qsearch_tools.sat import (
    CnfFormula,
    classical_phase_table,
    compile_oracle,
    dependency_profile,
    parse_dimacs,
    random_unique_formula,
    run_reversible,
    solve_unique_sat,
    to_dimacs,
)
from qsearch_tools.seeding import make_rng

BOTH_TRUE = "c x1 and x2\np cnf 2 2\n1 0\n2 0\n"


def test_parse_dimacs():
    f = parse_dimacs("c header\n\np cnf 3 2\n1 -2 0 3\n0\n%\n0\n")
    assert f.num_vars == 3
    assert f.clauses == ((1, -2), (3,))
    assert f.width == 2
    assert parse_dimacs(to_dimacs(f, ["again"])) == f


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("p cnf 2 1\n0\n", 2, "empty clause"),
        ("p cnf 2 1\n1 2\n", 2, "not terminated"),
        ("p cnf 2 2\n1 0\n", None, "declares 2"),
        ("p cnf 2 1\n3 0\n", 2, "beyond 2"),
        ("1 0\np cnf 1 1\n", 1, "before"),
        ("p cnf 2 1\n1 x 0\n", 2, "bad literal"),
        ("p dnf 2 1\n1 0\n", 1, "malformed"),
        ("p cnf 2 1\np cnf 2 1\n1 0\n", 2, "second"),
        ("c nothing\n", None, "missing"),
    ],
)
def test_dimacs_errors(text, line, message):
    with pytest.raises(DimacsError, match=message) as info:
        parse_dimacs(text)
    assert info.value.line == line


def test_formula_validation_and_bit_order():
    with pytest.raises(ValueError, match="empty"):
        CnfFormula(2, ((1,), ()))
    with pytest.raises(ValueError, match="outside"):
        CnfFormula(2, ((3,),))
    f = CnfFormula(3, ((1,), (-3,)))
    assert f.value_of(0b100, 1) == 1
    assert f.value_of(0b100, 3) == 0
    assert f.models() == [0b100, 0b110]
    assert f.occurrences(2) == 0
    assert f.assignment_string(0b100) == "100"


def test_compiled_layout_for_two_unit_clauses():
    compiled = compile_oracle(parse_dimacs(BOTH_TRUE))
    layout = compiled.layout
    assert layout.literal_qubits == ((2,), (3,))
    assert layout.clause_tree_qubits == ((), ())
    assert layout.clause_qubits == (4, 5)
    assert layout.root == 6
    assert layout.num_ancilla == 5
    assert compiled.D_u == compiled.gate_bound == 9
    assert compiled.D_p == 1
    manifest = compiled.to_manifest()
    assert manifest["o_p"] == [9, 10]
    assert manifest["layout"]["root"] == 6


def test_phase_table_matches_clause_evaluation():
    formula = CnfFormula(3, ((1, -2), (2, 3), (-1, -3)))
    compiled = compile_oracle(formula)
    phases, restored = classical_phase_table(compiled)
    assert restored
    np.testing.assert_array_equal(phases, formula.satisfied_mask())


def test_run_reversible_rejects_non_classical_gates():
    with pytest.raises(ValueError, match="reversible"):
        run_reversible(Circuit(1, 0, (h(0),)), np.zeros((1, 1), dtype=np.uint8))


def test_dependency_profile_of_unit_clauses():
    profile = dependency_profile(compile_oracle(parse_dimacs(BOTH_TRUE)))
    assert profile.counts == (5, 5)
    assert profile.bounds == (5, 5)
    assert profile.average <= profile.average_bound


def test_solve_two_unit_clauses():
    solution = solve_unique_sat(parse_dimacs(BOTH_TRUE))
    assert solution.bits == "11"
    assert solution.simulation_mode == "circuit"
    assert solution.success_probability == pytest.approx(1.0)
    assert solution.telemetry["aa_rounds"] == 0
    assert solution.telemetry["oracle_queries"] == 1
    assert solution.to_dict()["assignment"] == "11"


def test_solve_runs_rewritten_circuit_with_amplification():
    formula = CnfFormula(3, ((1, -2), (2,), (-3,)))
    solution = solve_unique_sat(formula)
    assert solution.telemetry["simulation_mode"] == "circuit"
    assert solution.telemetry["total_qubits"] == 14
    assert solution.telemetry["aa_rounds"] >= 1
    assert solution.bits == "110"
    assert solution.success_probability >= 1 - 1e-9


def test_solve_in_predicate_mode():
    formula = CnfFormula(3, ((1, -2), (2,), (-3,)))
    assert formula.models() == [0b110]
    solution = solve_unique_sat(formula, max_direct_qubits=0)
    assert solution.simulation_mode == "predicate"
    assert solution.telemetry["simulation_mode"] == "predicate"
    assert solution.bits == "110"


def test_solve_rejects_formula_with_two_models():
    with pytest.raises(SearchFailure, match="2 models"):
        solve_unique_sat(CnfFormula(2, ((1,),)), max_direct_qubits=0)


@settings(max_examples=100, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=6),
    width=st.integers(min_value=1, max_value=3),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_random_unique_formulas(n, width, seed):
    formula, model = random_unique_formula(n, make_rng(seed), max_width=width)
    assert formula.models() == [model]
    assert formula.width <= width
    assert formula.num_clauses <= 2 * n + 2

    compiled = compile_oracle(formula)
    assert compiled.D_u <= compiled.gate_bound
    phases, restored = classical_phase_table(compiled)
    assert restored
    np.testing.assert_array_equal(phases, formula.satisfied_mask())
    dependency_profile(compiled)


@pytest.mark.slow
def test_solve_random_formula_end_to_end():
    formula, model = random_unique_formula(8, make_rng(11))
    solution = solve_unique_sat(formula)
    assert solution.assignment == model
    rewrite = solution.telemetry["rewrite"]
    assert rewrite["total_oracle_gates"] == rewrite["emitted_oracle_gates"]
