"""
Circuit file formats: line-oriented text, JSON, and an OpenQASM 2.0 exporter.

Text format::

    # comment
    main 7
    ancilla 0
    CX q0 q1
    RY q2 0.7853981633974483
    ORACLE O q0 q1 q2
    U q3 label re00 im00 re01 im01 re10 im10 re11 im11

Floats are written with repr, so text and JSON round-trips are bit-exact.
"""
from __future__ import annotations

import cmath
import json
import math
import re
from typing import List, Sequence, Tuple

from ..errors import CircuitParseError
from .gates import Gate, GateKind, Tier
from .ir import Circuit

_TOKEN = re.compile(r"\S+")
_QUBIT = re.compile(r"q(\d+)$")

_FIXED_ARITY = {GateKind.X: 1, GateKind.Z: 1, GateKind.H: 1, GateKind.CX: 2, GateKind.CCX: 3}


# ----------------------------------------------------------------------
# TEXT
# ----------------------------------------------------------------------

def _qubits_text(qubits: Sequence[int]) -> str:
    return " ".join(f"q{q}" for q in qubits)


def gate_to_text(gate: Gate) -> str:
    kind = gate.kind
    if kind is GateKind.RY:
        return f"RY {_qubits_text(gate.qubits)} {gate.angle!r}"
    if kind is GateKind.ORACLE:
        return f"ORACLE {gate.label} {_qubits_text(gate.qubits)}"
    if kind is GateKind.ONE_QUBIT:
        parts = []
        for v in gate.matrix:  # type: ignore[union-attr]
            parts.append(repr(v.real))
            parts.append(repr(v.imag))
        return f"U {_qubits_text(gate.qubits)} {gate.label or 'u'} " + " ".join(parts)
    return f"{kind.value} {_qubits_text(gate.qubits)}"


def to_text(circuit: Circuit) -> str:
    lines = [f"main {circuit.num_main}", f"ancilla {circuit.num_ancilla}"]
    lines.extend(gate_to_text(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def _tokens(line: str) -> List[Tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def _parse_int(token: Tuple[str, int], lineno: int) -> int:
    text, col = token
    if not text.isdigit():
        raise CircuitParseError(f"expected a non-negative integer, found {text!r}", lineno, col)
    return int(text)


def _parse_qubit(token: Tuple[str, int], lineno: int) -> int:
    text, col = token
    m = _QUBIT.match(text)
    if not m:
        raise CircuitParseError(f"expected a qubit like q3, found {text!r}", lineno, col)
    return int(m.group(1))


def _parse_float(token: Tuple[str, int], lineno: int) -> float:
    text, col = token
    try:
        return float(text)
    except ValueError:
        raise CircuitParseError(f"expected a number, found {text!r}", lineno, col) from None


def _parse_gate(tokens: List[Tuple[str, int]], lineno: int) -> Gate:
    name, col = tokens[0]
    try:
        kind = GateKind(name.upper())
    except ValueError:
        raise CircuitParseError(f"unknown gate {name!r}", lineno, col) from None
    args = tokens[1:]

    if kind is GateKind.ORACLE:
        if len(args) < 2:
            raise CircuitParseError("ORACLE needs a tag and at least one qubit", lineno, col)
        qubits = [_parse_qubit(t, lineno) for t in args[1:]]
        return _build(Gate, lineno, col, kind, tuple(qubits), label=args[0][0])

    if kind is GateKind.RY:
        if len(args) != 2:
            raise CircuitParseError("RY needs a qubit and an angle", lineno, col)
        return _build(Gate, lineno, col, kind, (_parse_qubit(args[0], lineno),),
                      angle=_parse_float(args[1], lineno))

    if kind is GateKind.ONE_QUBIT:
        if len(args) != 10:
            raise CircuitParseError("U needs a qubit, a label and 8 matrix numbers", lineno, col)
        q = _parse_qubit(args[0], lineno)
        nums = [_parse_float(t, lineno) for t in args[2:]]
        matrix = tuple(complex(nums[i], nums[i + 1]) for i in range(0, 8, 2))
        return _build(Gate, lineno, col, kind, (q,), matrix=matrix, label=args[1][0])

    qubits = [_parse_qubit(t, lineno) for t in args]
    arity = _FIXED_ARITY.get(kind)
    if arity is not None and len(qubits) != arity:
        raise CircuitParseError(f"{kind.value} expects {arity} qubit(s), got {len(qubits)}", lineno, col)
    return _build(Gate, lineno, col, kind, tuple(qubits))


def _build(factory, lineno: int, col: int, *args, **kwargs):
    try:
        return factory(*args, **kwargs)
    except ValueError as e:
        raise CircuitParseError(str(e), lineno, col) from None


def parse_text(text: str) -> Circuit:
    num_main = None
    num_ancilla = 0
    gates: List[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokens(line)
        if not tokens:
            continue
        head = tokens[0][0].lower()
        if head in ("main", "ancilla"):
            if len(tokens) != 2:
                raise CircuitParseError(f"{head} takes exactly one count", lineno, tokens[0][1])
            if gates:
                raise CircuitParseError(f"{head} must precede all gates", lineno, tokens[0][1])
            value = _parse_int(tokens[1], lineno)
            if head == "main":
                num_main = value
            else:
                num_ancilla = value
            continue
        if num_main is None:
            raise CircuitParseError("gate before the 'main' header", lineno, tokens[0][1])
        gate = _parse_gate(tokens, lineno)
        if max(gate.qubits) >= num_main + num_ancilla:
            raise CircuitParseError(
                f"qubit q{max(gate.qubits)} outside register of {num_main + num_ancilla}",
                lineno,
                tokens[1][1],
            )
        gates.append(gate)
    if num_main is None:
        raise CircuitParseError("missing 'main' header", max(1, len(text.splitlines())), 1)
    return Circuit(num_main, num_ancilla, tuple(gates))


# ----------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------

def gate_to_dict(gate: Gate) -> dict:
    out: dict = {"kind": gate.kind.value, "qubits": list(gate.qubits), "params": []}
    if gate.kind is GateKind.RY:
        out["params"] = [gate.angle]
    elif gate.kind is GateKind.ONE_QUBIT:
        out["params"] = [p for v in gate.matrix for p in (v.real, v.imag)]  # type: ignore[union-attr]
        out["label"] = gate.label
    elif gate.kind is GateKind.ORACLE:
        out["tag"] = gate.label
    return out


def gate_from_dict(data: dict) -> Gate:
    kind = GateKind(data["kind"])
    qubits = tuple(data["qubits"])
    params = data.get("params", [])
    if kind is GateKind.RY:
        return Gate(kind, qubits, angle=float(params[0]))
    if kind is GateKind.ONE_QUBIT:
        matrix = tuple(complex(params[i], params[i + 1]) for i in range(0, 8, 2))
        return Gate(kind, qubits, matrix=matrix, label=data.get("label", "u"))
    if kind is GateKind.ORACLE:
        return Gate(kind, qubits, label=data["tag"])
    return Gate(kind, qubits)


def to_dict(circuit: Circuit) -> dict:
    return {
        "num_main": circuit.num_main,
        "num_ancilla": circuit.num_ancilla,
        "gates": [gate_to_dict(g) for g in circuit.gates],
    }


def from_dict(data: dict) -> Circuit:
    return Circuit(
        int(data["num_main"]),
        int(data.get("num_ancilla", 0)),
        tuple(gate_from_dict(g) for g in data["gates"]),
    )


def to_json(circuit: Circuit) -> str:
    return json.dumps(to_dict(circuit), indent=1)


def parse_json(text: str) -> Circuit:
    return from_dict(json.loads(text))


# ----------------------------------------------------------------------
# OPENQASM 2.0 (basic tier only)
# ----------------------------------------------------------------------

def u3_angles(gate: Gate, tol: float = 1e-12) -> Tuple[float, float, float]:
    """(theta, phi, lambda) with U = e^{ig} u3(theta, phi, lambda)."""
    m = gate.matrix2()
    u00, u01, u10, u11 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    theta = 2 * math.atan2(abs(u10), abs(u00))
    if abs(u00) > tol:
        phase = cmath.phase(u00)
        if abs(u10) > tol:
            phi = cmath.phase(u10) - phase
            lam = cmath.phase(-u01) - phase
        else:
            phi = 0.0
            lam = cmath.phase(u11) - phase
    else:
        phase = cmath.phase(u10)
        phi = 0.0
        lam = cmath.phase(-u01) - phase
    return theta, phi, lam


def to_qasm(circuit: Circuit) -> str:
    if circuit.tier is not Tier.BASIC:
        bad = next(g for g in circuit.gates if g.tier is not Tier.BASIC)
        raise ValueError(f"QASM export needs basic gates only, found {bad.kind.value}; decompose first")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for g in circuit.gates:
        if g.kind is GateKind.CX:
            lines.append(f"cx q[{g.qubits[0]}],q[{g.qubits[1]}];")
        else:
            theta, phi, lam = u3_angles(g)
            lines.append(f"u3({theta!r},{phi!r},{lam!r}) q[{g.qubits[0]}];")
    return "\n".join(lines) + "\n"
