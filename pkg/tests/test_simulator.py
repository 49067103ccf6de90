import math

import numpy as np
import pytest

from qsearch_tools.circuit import Circuit, cx, diffuser, h, oracle_call, x, z
from qsearch_tools.errors import RegisterMismatchError, UnboundOracleError
from qsearch_tools.search.circuits import f0_circuit, hadamard_layer
from qsearch_tools.simulator import (
    PhaseOracleSpec,
    Statevector,
    apply_circuit,
    marginal_probabilities,
    run,
    success_probability,
    unitary_equiv,
)
from qsearch_tools.simulator.dump import probability_table_csv, read_statevector, write_statevector


def test_f0_flips_only_all_zero():
    zero = apply_circuit(Statevector.basis(1, 0), f0_circuit(1))
    one = apply_circuit(Statevector.basis(1, 1), f0_circuit(1))
    assert zero.amplitude_at(0) == pytest.approx(-1)
    assert one.amplitude_at(1) == pytest.approx(1)

    out = apply_circuit(Statevector.uniform(3), f0_circuit(3))
    expected = np.full(8, 8**-0.5)
    expected[0] -= 2 / math.sqrt(8)
    assert np.allclose(out.amplitudes, expected, atol=1e-12)


def test_single_grover_step_on_two_qubits_is_certain():
    c = Circuit(2, 0, tuple(hadamard_layer(range(2))) + (oracle_call("O", (0, 1)), diffuser((0, 1))))
    state = run(c, {"O": PhaseOracleSpec.from_marked(2, [2])})
    assert abs(state.amplitude_at(2)) == pytest.approx(1.0, abs=1e-12)


def test_oracle_acts_on_listed_qubits_in_order():
    # the oracle sees (q2, q0) as its 2-bit input, q2 most significant
    c = Circuit(3, 0, (x(2), oracle_call("O", (2, 0))))
    state = apply_circuit(Statevector.basis(3, 0), c, {"O": PhaseOracleSpec.from_marked(2, [0b10])})
    assert state.amplitude_at(0b001) == pytest.approx(-1)


def test_unbound_oracle_is_reported():
    with pytest.raises(UnboundOracleError):
        run(Circuit(1, 0, (oracle_call("missing", (0,)),)))


def test_marginals_and_success():
    state = run(Circuit(2, 1, (h(0), cx(0, 2))))
    assert np.allclose(marginal_probabilities(state, [0]), [0.5, 0.5])
    assert np.allclose(marginal_probabilities(state, [2, 1]), [0.5, 0.0, 0.5, 0.0])
    assert success_probability(state, lambda i: i == 0b101) == pytest.approx(0.5)


def test_oracle_spec_constructors_agree():
    a = PhaseOracleSpec.from_marked(3, [1, 6])
    b = PhaseOracleSpec.from_predicate(3, lambda i: i in (1, 6))
    mask = np.zeros(8, dtype=bool)
    mask[[1, 6]] = True
    c = PhaseOracleSpec.from_mask(mask)
    assert np.array_equal(a.mask, b.mask) and np.array_equal(b.mask, c.mask)
    assert a.marked() == frozenset({1, 6}) and c.num_marked == 2
    with pytest.raises(ValueError):
        PhaseOracleSpec.from_marked(2, [7])
    with pytest.raises(ValueError):
        PhaseOracleSpec.from_marked(2, [0, 1], single=True)


def test_equivalence_detects_differences():
    same = unitary_equiv(Circuit(2, 0, (cx(0, 1), cx(0, 1))), Circuit(2))
    assert same.equivalent and same.mode == "basis" and same.inputs_checked == 4
    differ = unitary_equiv(Circuit(2, 0, (z(0),)), Circuit(2))
    assert not differ
    assert differ.max_deviation == pytest.approx(2.0)
    assert unitary_equiv(Circuit(1, 0, (x(0), z(0), x(0), z(0))), Circuit(1), up_to_global_phase=True)
    random_mode = unitary_equiv(Circuit(2, 0, (h(0), h(0))), Circuit(2), exhaustive=False, seed=3)
    assert random_mode.equivalent and random_mode.mode == "random"
    with pytest.raises(RegisterMismatchError):
        unitary_equiv(Circuit(2), Circuit(2, 1))


def test_ancilla_clean_inputs_only():
    # CX onto the ancilla is invisible only when the ancilla starts clean and is measured out
    borrowed = Circuit(1, 1, (cx(0, 1), cx(0, 1)))
    result = unitary_equiv(borrowed, Circuit(1, 1), ancilla_clean=True)
    assert result.equivalent and result.inputs_checked == 2


def test_statevector_dump_reads_back(tmp_path):
    state = run(Circuit(2, 0, (h(0), cx(0, 1))))
    bin_path, json_path = write_statevector(state, tmp_path / "bell")
    assert bin_path.stat().st_size == 4 * 16
    again = read_statevector(tmp_path / "bell")
    assert np.array_equal(again.amplitudes, state.amplitudes)
    table = probability_table_csv(state).splitlines()
    assert table[0] == "index,bitstring,probability"
    assert table[1].startswith("0,00,0.5")


def test_statevector_validates_norm():
    with pytest.raises(ValueError, match="norm"):
        Statevector(1, np.array([1.0, 1.0]))
