import numpy as np
import pytest

from qsearch_tools.circuit import (
    Circuit,
    GateKind,
    Tier,
    acts_on,
    basic_size,
    ccx,
    compose,
    count_gates,
    cx,
    decompose_to_basic,
    dependency_counts,
    depends_on,
    diffuser,
    h,
    inverse,
    mcz,
    one_qubit,
    oracle_call,
    remap,
    ry,
    x,
)
from qsearch_tools.errors import AncillaBudgetError, RegisterMismatchError
from qsearch_tools.simulator import run, unitary_equiv


def test_gate_rejects_duplicate_and_wrong_arity():
    with pytest.raises(ValueError, match="duplicate"):
        cx(1, 1)
    with pytest.raises(ValueError):
        Circuit(2, 0, (ccx(0, 1, 2),))
    with pytest.raises(ValueError, match="tag"):
        oracle_call("", (0,))
    with pytest.raises(ValueError, match="unitary"):
        one_qubit(0, [[1, 1], [0, 1]])


def test_tiers():
    assert Circuit(2, 0, (cx(0, 1), one_qubit(0, np.eye(2)))).tier is Tier.BASIC
    assert Circuit(2, 0, (cx(0, 1), x(0))).tier is Tier.LOGICAL


def test_inverse_reverses_and_negates_rotations():
    c = Circuit(2, 0, (h(0), ry(1, 0.3), cx(0, 1)))
    inv = inverse(c)
    assert [g.kind for g in inv.gates] == [GateKind.CX, GateKind.RY, GateKind.H]
    assert inv.gates[1].angle == pytest.approx(-0.3)
    assert inverse(inv) == c
    assert unitary_equiv(compose(c, inv), Circuit(2)).equivalent


def test_compose_checks_main_register():
    with pytest.raises(RegisterMismatchError):
        compose(Circuit(2), Circuit(3))
    assert compose(Circuit(2, 1), Circuit(2, 3)).num_ancilla == 3


def test_remap_moves_gates():
    moved = remap(Circuit(2, 0, (cx(0, 1),)), [2, 0], 1, 2)
    assert moved.gates[0].qubits == (2, 0)


def test_acts_on_skips_identity_single_qubit_gates():
    assert acts_on(one_qubit(0, np.eye(2) * 1j)) == frozenset()
    assert acts_on(ry(0, 0.0)) == frozenset()
    assert acts_on(cx(0, 2)) == frozenset({0, 2})


def test_dependency_is_transitive():
    c = Circuit(2, 3, (cx(0, 2), cx(1, 3), ccx(2, 3, 4), x(4)))
    assert depends_on(c, 0) == frozenset({0, 2, 3})
    assert depends_on(c, 1) == frozenset({1, 2, 3})
    assert dependency_counts(c) == (3, 3)


def test_toffoli_lowering_is_exact():
    assert basic_size(GateKind.CCX, 3) == 15
    logical = Circuit(3, 0, (ccx(0, 1, 2),))
    lowered = decompose_to_basic(logical)
    assert lowered.tier is Tier.BASIC
    assert unitary_equiv(logical, lowered).equivalent


@pytest.mark.parametrize("width", [1, 2, 3, 4, 5])
def test_diffuser_lowering_matches_on_clean_ancillas(width):
    logical = Circuit(width, 0, (diffuser(range(width)),))
    lowered = decompose_to_basic(logical)
    assert lowered.num_ancilla == max(0, width - 3)
    assert unitary_equiv(logical.widened(lowered.num_ancilla), lowered, ancilla_clean=True).equivalent


def test_borrow_policy_needs_enough_ancillas():
    c = Circuit(5, 1, (mcz(range(5)),))
    with pytest.raises(AncillaBudgetError):
        decompose_to_basic(c, ancilla_policy="borrow", borrowed=[5])
    with pytest.raises(AncillaBudgetError):
        decompose_to_basic(c, ancilla_policy="borrow", borrowed=[0])
    lowered = decompose_to_basic(Circuit(4, 1, (mcz(range(4)),)), ancilla_policy="borrow", borrowed=[4])
    assert lowered.num_ancilla == 1


def test_oracle_calls_pass_through_lowering():
    c = Circuit(2, 0, (h(0), oracle_call("O", (0, 1)), diffuser((0, 1))))
    lowered = decompose_to_basic(c)
    assert sum(g.kind is GateKind.ORACLE for g in lowered.gates) == 1


def test_count_gates_levels():
    c = Circuit(3, 0, (oracle_call("O", (0, 1, 2)), diffuser((0, 1, 2)), ccx(0, 1, 2)))
    logical = count_gates(c)
    assert logical.oracle_calls == 1
    assert logical.per_kind == {"CCX": 1, "DIFFUSER": 1, "ORACLE": 1}
    basic = count_gates(c, level="basic", with_dependency=False)
    assert basic.total == len(decompose_to_basic(c))
    assert basic.basic_equivalent == logical.basic_equivalent
    with pytest.raises(ValueError):
        count_gates(c, level="physical")


def test_run_prepares_basis_state():
    state = run(Circuit(3, 0, (x(0), cx(0, 2))))
    assert abs(state.amplitude_at(0b101)) == pytest.approx(1.0)
