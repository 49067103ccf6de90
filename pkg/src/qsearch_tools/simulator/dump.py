from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

from .statevector import Statevector, marginal_probabilities


def write_statevector(state: Statevector, stem: str | Path) -> Tuple[Path, Path]:
    """`<stem>.bin` holds little-endian interleaved (re, im) doubles; `<stem>.json` the header."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    bin_path = stem.with_suffix(".bin")
    json_path = stem.with_suffix(".json")
    interleaved = np.empty(2 * state.amplitudes.size, dtype="<f8")
    interleaved[0::2] = state.amplitudes.real
    interleaved[1::2] = state.amplitudes.imag
    bin_path.write_bytes(interleaved.tobytes())
    json_path.write_text(json.dumps({"num_qubits": state.num_qubits}) + "\n")
    return bin_path, json_path


def read_statevector(stem: str | Path) -> Statevector:
    stem = Path(stem)
    header = json.loads(stem.with_suffix(".json").read_text())
    raw = np.frombuffer(stem.with_suffix(".bin").read_bytes(), dtype="<f8")
    return Statevector(int(header["num_qubits"]), raw[0::2] + 1j * raw[1::2])


def probability_table_csv(state: Statevector, qubits: Optional[Sequence[int]] = None) -> str:
    qs = list(range(state.num_qubits)) if qubits is None else list(qubits)
    probs = marginal_probabilities(state, qs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "bitstring", "probability"])
    for index, p in enumerate(probs):
        writer.writerow([index, format(index, f"0{len(qs)}b") if qs else "", repr(float(p))])
    return buf.getvalue()
