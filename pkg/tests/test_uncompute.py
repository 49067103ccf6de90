import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsearch_tools.circuit import Circuit, ccx, cx, h, x, z
from qsearch_tools.errors import DecompositionError, RegisterMismatchError
from qsearch_tools.sat import compile_oracle, random_unique_formula
from qsearch_tools.search import DiffuserSchedule
from qsearch_tools.seeding import make_rng
from qsearch_tools.simulator import PhaseOracleSpec, unitary_equiv
from qsearch_tools.uncompute import (
    GenericOracleCircuit,
    RewriteReport,
    UncomputableDecomposition,
    average_per_query,
    decomposition_from_manifest,
    oppositely_ordered,
    rewrite,
    rewrite_stepwise,
    split_by_dependency,
    trivial_decomposition,
    w_as_generic,
)


def copy_first_bit():
    """Marks every element whose first qubit is 1, through an ancilla copy."""
    O_u = Circuit(3, 1, (cx(0, 3),))
    O_p = Circuit(3, 1, (z(3),))
    return UncomputableDecomposition(O_u, O_p), PhaseOracleSpec.from_marked(3, [4, 5, 6, 7])


def and_of_two():
    O_u = Circuit(2, 1, (ccx(0, 1, 2),))
    O_p = Circuit(2, 1, (z(2),))
    return UncomputableDecomposition(O_u, O_p), PhaseOracleSpec.from_marked(2, [3])


# ----------------------------------------------------------------------
# decompositions
# ----------------------------------------------------------------------

def test_decomposition_validates_against_oracle():
    dec, oracle = and_of_two()
    result = dec.validate(oracle)
    assert result.equivalent
    assert result.mode == "basis"
    assert (dec.D_u, dec.D_p, dec.num_ancilla) == (1, 1, 1)


def test_wrong_phase_part_is_rejected():
    dec, oracle = and_of_two()
    wrong = UncomputableDecomposition(dec.O_u, Circuit(2, 1, (z(0),)))
    with pytest.raises(DecompositionError, match="deviates"):
        wrong.validate(oracle)


def test_decomposition_rejects_oracle_calls_and_register_mismatch():
    dec, _ = and_of_two()
    with pytest.raises(RegisterMismatchError):
        UncomputableDecomposition(dec.O_u, Circuit(3, 1, (z(3),)))
    with pytest.raises(RegisterMismatchError):
        dec.validate(PhaseOracleSpec.from_marked(3, [1]))


def test_trivial_decomposition_keeps_whole_oracle_as_phase_part():
    oracle_circuit = Circuit(2, 0, (h(0), x(1)))
    dec = trivial_decomposition(oracle_circuit)
    assert dec.D_u == 0
    assert dec.O_p == oracle_circuit


def test_manifest_reload():
    dec, _ = and_of_two()
    circuit = dec.as_oracle_circuit()
    manifest = dec.to_manifest()
    assert manifest["o_u"] == [0, 1]
    assert manifest["o_p"] == [1, 2]
    assert decomposition_from_manifest(circuit, manifest) == dec


def test_manifest_tail_must_undo_compute_part():
    dec, _ = and_of_two()
    circuit = dec.as_oracle_circuit().then(x(0))
    with pytest.raises(DecompositionError, match="inverse"):
        decomposition_from_manifest(circuit, dec.to_manifest())
    with pytest.raises(DecompositionError, match="outside"):
        decomposition_from_manifest(dec.as_oracle_circuit(), {"o_u": [0, 1], "o_p": [1, 9]})
    with pytest.raises(DecompositionError, match="pair"):
        decomposition_from_manifest(dec.as_oracle_circuit(), {"o_p": [1, 2]})


# ----------------------------------------------------------------------
# generic circuits
# ----------------------------------------------------------------------

def test_w_as_generic_factors_at_oracle_calls():
    V = w_as_generic(DiffuserSchedule.of([1, 2]))
    assert V.ell == 4
    assert V.domains == ((0,), (0,), (1, 2), (0,))
    assert V.participation() == (3, 1, 1)


def test_generic_factor_must_stay_in_domain():
    with pytest.raises(ValueError, match="outside its domain"):
        GenericOracleCircuit(2, ((0,),), (Circuit(2, 0, (cx(0, 1),)),))
    with pytest.raises(ValueError, match="at least one"):
        GenericOracleCircuit(2, (), ())


def test_split_by_dependency_is_transitive():
    O_u = Circuit(3, 2, (cx(0, 3), cx(3, 4), x(2)))
    dep, rest = split_by_dependency(O_u, (0,))
    assert dep.gates == (cx(0, 3), cx(3, 4))
    assert rest.gates == (x(2),)
    dep, rest = split_by_dependency(O_u, ())
    assert len(dep) == 0 and len(rest) == 3


# ----------------------------------------------------------------------
# rewrite
# ----------------------------------------------------------------------

def test_rewrite_skips_gates_outside_each_domain():
    dec, oracle = copy_first_bit()
    V = w_as_generic(DiffuserSchedule.of([1, 2]))
    result = rewrite(V, dec, oracle)
    report = result.report
    assert report.dbar == (1, 1, 0, 1)
    assert report.total_oracle_gates == report.emitted_oracle_gates == 2 * 1 + 4 * 1 + 2 * 3
    assert report.qubit_dependency == (1, 0, 0)
    assert report.unrewritten_per_query == 3
    assert report.average_per_query == pytest.approx(1 + 2 / 4 + 6 / 4)


def test_rewrite_matches_inlined_circuit():
    dec, _ = copy_first_bit()
    V = w_as_generic(DiffuserSchedule.of([1, 2]))
    rewritten = rewrite(V, dec).circuit
    expanded = V.expand(dec)
    assert rewritten.num_ancilla == expanded.num_ancilla == 1
    assert unitary_equiv(expanded, rewritten, ancilla_clean=True).equivalent


def test_rewrite_checks_register():
    dec, _ = and_of_two()
    with pytest.raises(RegisterMismatchError):
        rewrite(w_as_generic(DiffuserSchedule.of([1, 2])), dec)


def segments_circuit(segments, num_main, num_ancilla):
    gates = []
    for _, part in segments:
        gates.extend(part.gates)
    return Circuit(num_main, num_ancilla, tuple(gates))


def test_stepwise_rewrite_agrees_at_every_step():
    dec, _ = copy_first_bit()
    V = w_as_generic(DiffuserSchedule.of([1, 2]))
    stepwise = rewrite_stepwise(V, dec)
    assert stepwise.circuit == rewrite(V, dec).circuit
    assert [name for name, _ in stepwise.steps] == ["inline", "append_identity", "split", "commute", "cancel"]
    assert stepwise.labels("cancel")[:5] == ["O_u", "O_p", "O_s1^dg", "U_1", "O_s1"]
    assert stepwise.labels("cancel")[-1] == "O_u^dg"

    expanded = V.expand(dec)
    for name, segments in stepwise.steps:
        step = segments_circuit(segments, V.num_main, 1)
        assert unitary_equiv(expanded, step, ancilla_clean=True).equivalent, name
    with pytest.raises(KeyError):
        stepwise.labels("reorder")


# ----------------------------------------------------------------------
# per-query averages
# ----------------------------------------------------------------------

def make_report(participation, qubit_dependency, domain_sizes, dbar):
    return RewriteReport(
        D_u=0,
        D_p=0,
        ell=len(dbar),
        dbar=tuple(dbar),
        domain_sizes=tuple(domain_sizes),
        qubit_dependency=tuple(qubit_dependency),
        participation=tuple(participation),
        total_oracle_gates=2 * sum(dbar),
        emitted_oracle_gates=2 * sum(dbar),
    )


def test_exact_average_never_exceeds_weighted():
    dec, oracle = copy_first_bit()
    report = rewrite(w_as_generic(DiffuserSchedule.of([1, 2])), dec, oracle).report
    assert average_per_query(report, "exact") <= average_per_query(report, "weighted")


def test_weighted_above_uniform_without_opposite_ordering():
    report = make_report((2, 0), (5, 1), (1, 1), (5, 5))
    assert average_per_query(report, "weighted") == pytest.approx(10.0)
    assert average_per_query(report, "uniform") == pytest.approx(6.0)
    assert not oppositely_ordered(report)


def test_weighted_below_uniform_when_oppositely_ordered():
    report = make_report((0, 2), (5, 1), (1, 1), (1, 1))
    assert oppositely_ordered(report)
    assert average_per_query(report, "weighted") <= average_per_query(report, "uniform")


def test_unknown_average_mode():
    with pytest.raises(ValueError, match="averaging mode"):
        average_per_query(make_report((1,), (1,), (1,), (1,)), "median")


def test_report_dict_carries_all_modes():
    dec, _ = copy_first_bit()
    out = rewrite(w_as_generic(DiffuserSchedule.of([1, 2])), dec).report.to_dict()
    assert set(out["average_per_query"]) == {"exact", "weighted", "uniform"}
    assert out["dbar"] == [1, 1, 0, 1]


# ----------------------------------------------------------------------
# compiled formulas
# ----------------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_rewrite_of_compiled_formula_is_equivalent(seed):
    formula, _ = random_unique_formula(2, make_rng(seed), max_clauses=3, max_width=2)
    compiled = compile_oracle(formula)
    dec = compiled.decomposition
    dec.validate(compiled.spec())
    V = w_as_generic(DiffuserSchedule.of([1, 1]), num_ancilla=compiled.layout.num_ancilla)
    result = rewrite(V, dec)
    assert result.report.total_oracle_gates == result.report.emitted_oracle_gates
    check = unitary_equiv(V.expand(dec), result.circuit, ancilla_clean=True, exhaustive=True)
    assert check.equivalent
