import json

import numpy as np
import pytest

from qsearch_tools.circuit import Circuit, ccx, cx, decompose_to_basic, diffuser, h, one_qubit, oracle_call, ry, x
from qsearch_tools.circuit.formats import from_dict, parse_json, parse_text, to_dict, to_json, to_qasm, to_text
from qsearch_tools.errors import CircuitParseError
from qsearch_tools.search.circuits import build_W
from qsearch_tools.search import DiffuserSchedule

MIXED = Circuit(3, 1, (
    h(0),
    ry(1, 0.125),
    one_qubit(2, [[0, 1j], [1j, 0]], "ix"),
    oracle_call("O", (0, 1, 2)),
    diffuser((0, 1)),
    ccx(0, 1, 3),
))


def test_text_form_reads_back():
    text = to_text(MIXED)
    assert text.splitlines()[:2] == ["main 3", "ancilla 1"]
    assert "ORACLE O q0 q1 q2" in text
    assert parse_text(text) == MIXED


def test_text_parser_ignores_comments_and_blank_lines():
    text = "# header\nmain 2\n\nX q0   # flip\nCX q0 q1\n"
    assert parse_text(text) == Circuit(2, 0, (x(0), cx(0, 1)))


@pytest.mark.parametrize("text, line, column", [
    ("X q0\n", 1, 1),
    ("main 2\nFOO q0\n", 2, 1),
    ("main 2\nCX q0\n", 2, 1),
    ("main 2\nX q5\n", 2, 3),
    ("main 2\nX 0\n", 2, 3),
    ("main 2\nX q0\nancilla 1\n", 3, 1),
    ("main 1\nRY q0 abc\n", 2, 7),
])
def test_text_parser_reports_position(text, line, column):
    with pytest.raises(CircuitParseError) as info:
        parse_text(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_json_form():
    payload = json.loads(to_json(MIXED))
    assert payload["num_main"] == 3
    assert parse_json(to_json(MIXED)) == MIXED
    assert from_dict(to_dict(MIXED)) == MIXED


def test_qasm_needs_basic_gates():
    with pytest.raises(ValueError, match="decompose"):
        to_qasm(Circuit(2, 0, (x(0),)))
    with pytest.raises(ValueError):
        to_qasm(decompose_to_basic(build_W(DiffuserSchedule((1, 1)))))


def test_qasm_export():
    lowered = decompose_to_basic(Circuit(3, 0, (ccx(0, 1, 2), x(1))))
    qasm = to_qasm(lowered)
    lines = qasm.splitlines()
    assert lines[:3] == ["OPENQASM 2.0;", 'include "qelib1.inc";', "qreg q[3];"]
    assert sum(line.startswith("cx ") for line in lines) == 6
    assert sum(line.startswith("u3(") for line in lines) == 10
