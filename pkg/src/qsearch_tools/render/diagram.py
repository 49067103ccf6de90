"""
Wire-and-box circuit diagrams as PNG.

One column per gate, wrapped into rows of at most `cols` columns. Diffusers
are boxes over their block, oracle calls boxes over the qubits they touch,
CX/CCX dots joined to a target circle.
"""
from __future__ import annotations

import logging
import math
import os
from typing import Optional, Tuple

from PIL import Image, ImageDraw, ImageFont

from ..circuit.gates import Gate, GateKind
from ..circuit.ir import Circuit

logger = logging.getLogger(__name__)

# === Layout ===
COLUMN_WIDTH = 44
WIRE_GAP = 28
MARGIN = 24
LABEL_WIDTH = 36
ROW_GAP = 20
DOT_RADIUS = 4
TARGET_RADIUS = 8

COLOURS = {
    "wire": "#333333",
    "gate": "#ffffff",
    "outline": "#222222",
    "diffuser": "#cfe3ff",
    "oracle": "#ffd9a8",
    "text": "#111111",
}


def hex_to_rgba(col: str) -> Optional[Tuple[int, int, int, int]]:
    if col.lower() == "transparent":
        return None
    if col.startswith("#") and len(col) in (4, 7):
        if len(col) == 4:
            col = "#" + "".join(c * 2 for c in col[1:])
        return int(col[1:3], 16), int(col[3:5], 16), int(col[5:7], 16), 255
    raise ValueError(f"colour {col!r} is neither 'transparent' nor #RGB / #RRGGBB")


def _gate_text(gate: Gate) -> str:
    if gate.kind is GateKind.DIFFUSER:
        return f"G{len(gate.qubits)}"
    if gate.kind is GateKind.ORACLE:
        return gate.label
    if gate.kind is GateKind.RY:
        return "RY"
    if gate.kind is GateKind.ONE_QUBIT:
        return gate.label or "U"
    return gate.kind.value


def _box(draw: ImageDraw.ImageDraw, x: int, top: int, bottom: int, fill, text: str, font) -> None:
    half = COLUMN_WIDTH // 2 - 4
    draw.rectangle((x - half, top - 10, x + half, bottom + 10), fill=fill, outline=hex_to_rgba(COLOURS["outline"]))
    tw = draw.textlength(text, font=font)
    draw.text((x - tw / 2, (top + bottom) / 2 - 6), text, fill=hex_to_rgba(COLOURS["text"]), font=font)


def _draw_gate(draw: ImageDraw.ImageDraw, gate: Gate, x: int, wire_y, font) -> None:
    outline = hex_to_rgba(COLOURS["outline"])
    ys = [wire_y(q) for q in gate.qubits]
    kind = gate.kind
    if kind in (GateKind.CX, GateKind.CCX):
        *controls, target = gate.qubits
        draw.line((x, min(ys), x, max(ys)), fill=outline, width=2)
        for q in controls:
            y = wire_y(q)
            draw.ellipse((x - DOT_RADIUS, y - DOT_RADIUS, x + DOT_RADIUS, y + DOT_RADIUS), fill=outline)
        ty = wire_y(target)
        draw.ellipse((x - TARGET_RADIUS, ty - TARGET_RADIUS, x + TARGET_RADIUS, ty + TARGET_RADIUS),
                     fill=hex_to_rgba(COLOURS["gate"]), outline=outline, width=2)
        draw.line((x - TARGET_RADIUS, ty, x + TARGET_RADIUS, ty), fill=outline, width=2)
        draw.line((x, ty - TARGET_RADIUS, x, ty + TARGET_RADIUS), fill=outline, width=2)
    elif kind is GateKind.MCZ and len(gate.qubits) > 1:
        draw.line((x, min(ys), x, max(ys)), fill=outline, width=2)
        for y in ys:
            draw.ellipse((x - DOT_RADIUS, y - DOT_RADIUS, x + DOT_RADIUS, y + DOT_RADIUS), fill=outline)
    elif kind is GateKind.DIFFUSER:
        _box(draw, x, min(ys), max(ys), hex_to_rgba(COLOURS["diffuser"]), _gate_text(gate), font)
    elif kind is GateKind.ORACLE:
        _box(draw, x, min(ys), max(ys), hex_to_rgba(COLOURS["oracle"]), _gate_text(gate), font)
    else:
        _box(draw, x, ys[0], ys[0], hex_to_rgba(COLOURS["gate"]), _gate_text(gate), font)


def render_circuit_image(circuit: Circuit, cols: int = 24, bg: str = "#ffffff") -> Image.Image:
    n = max(1, circuit.num_qubits)
    count = max(1, len(circuit))
    cols = max(1, min(cols, count))
    rows = math.ceil(count / cols)
    band_h = (n - 1) * WIRE_GAP + 2 * MARGIN
    canvas_w = LABEL_WIDTH + cols * COLUMN_WIDTH + 2 * MARGIN
    canvas_h = rows * band_h + (rows - 1) * ROW_GAP

    bg_rgba = hex_to_rgba(bg)
    canvas = Image.new("RGBA", (canvas_w, canvas_h), (0, 0, 0, 0) if bg_rgba is None else bg_rgba)
    draw = ImageDraw.Draw(canvas)
    font = ImageFont.load_default()
    wire = hex_to_rgba(COLOURS["wire"])

    for r in range(rows):
        top = r * (band_h + ROW_GAP) + MARGIN
        for q in range(circuit.num_qubits):
            y = top + q * WIRE_GAP
            name = f"q{q}" if q < circuit.num_main else f"a{q - circuit.num_main}"
            draw.text((MARGIN // 2, y - 6), name, fill=hex_to_rgba(COLOURS["text"]), font=font)
            draw.line((MARGIN + LABEL_WIDTH, y, canvas_w - MARGIN, y), fill=wire, width=1)

    for idx, gate in enumerate(circuit.gates):
        r, c = divmod(idx, cols)
        top = r * (band_h + ROW_GAP) + MARGIN
        x = MARGIN + LABEL_WIDTH + c * COLUMN_WIDTH + COLUMN_WIDTH // 2
        _draw_gate(draw, gate, x, lambda q, top=top: top + q * WIRE_GAP, font)
    return canvas


def render_circuit_png(circuit: Circuit, out_path: str, cols: int = 24, bg: str = "#ffffff") -> str:
    canvas = render_circuit_image(circuit, cols=cols, bg=bg)
    parent = os.path.dirname(out_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    if hex_to_rgba(bg) is None:
        canvas.save(out_path, format="PNG")
    else:
        canvas.convert("RGB").save(out_path, format="PNG")
    logger.info("diagram with %d gates written to %s", len(circuit), out_path)
    return out_path
