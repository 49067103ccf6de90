"""Dense bit matrices over GF(2) with Gauss-Jordan elimination."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np


def bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


class BitMatrix:
    __slots__ = ("bits",)

    def __init__(self, bits) -> None:
        arr = (np.asarray(bits, dtype=np.int64) & 1).astype(np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"bit matrix must be 2-D, got shape {arr.shape}")
        arr.setflags(write=False)
        self.bits = arr

    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        data = [list(r) for r in rows]
        if not data:
            return cls.zeros(0, cols or 0)
        return cls(np.array(data, dtype=np.uint8))

    @classmethod
    def from_int_rows(cls, values: Iterable[int], cols: int) -> "BitMatrix":
        data = [int_to_bits(v, cols) for v in values]
        if not data:
            return cls.zeros(0, cols)
        return cls(np.stack(data))

    @classmethod
    def from_hex_rows(cls, hex_rows: Sequence[str], cols: int) -> "BitMatrix":
        data = []
        for text in hex_rows:
            unpacked = np.unpackbits(np.frombuffer(bytes.fromhex(text), dtype=np.uint8))
            data.append(unpacked[:cols])
        if not data:
            return cls.zeros(0, cols)
        return cls(np.stack(data))

    # ------------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.bits.shape  # type: ignore[return-value]

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix(self.bits.T)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitMatrix) and self.shape == other.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.shape, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, {self.to_hex_rows()})"

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            return BitMatrix((self.bits.astype(np.int64) @ other.bits.astype(np.int64)) & 1)
        vec = np.asarray(other, dtype=np.int64)
        return ((self.bits.astype(np.int64) @ vec) & 1).astype(np.uint8)

    def select_rows(self, rows: Sequence[int]) -> "BitMatrix":
        return BitMatrix(self.bits[list(rows), :].reshape(len(rows), self.cols))

    def int_rows(self) -> List[int]:
        return [bits_to_int(r) for r in self.bits]

    def column_weights(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.bits.sum(axis=0))

    def rank(self) -> int:
        return eliminate(self).rank

    def to_hex_rows(self) -> List[str]:
        return [np.packbits(row).tobytes().hex() for row in self.bits]

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "hex": self.to_hex_rows()}

    @classmethod
    def from_dict(cls, data: dict) -> "BitMatrix":
        matrix = cls.from_hex_rows(data["hex"], int(data["cols"]))
        if matrix.rows != int(data["rows"]):
            raise ValueError("row count disagrees with hex rows")
        return matrix


@dataclass(frozen=True)
class Elimination:
    reduced: BitMatrix
    rank: int
    pivots: Tuple[int, ...]


def eliminate(matrix: BitMatrix) -> Elimination:
    a = matrix.bits.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others, :] ^= a[r, :]
        pivots.append(c)
        r += 1
    return Elimination(BitMatrix(a), len(pivots), tuple(pivots))


def kernel_basis(matrix: BitMatrix) -> BitMatrix:
    """cols x d matrix whose columns form a basis of {x : A x = 0}."""
    elim = eliminate(matrix)
    n = matrix.cols
    pivot_set = set(elim.pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((n, len(free)), dtype=np.uint8)
    reduced = elim.reduced.bits
    for j, f in enumerate(free):
        basis[f, j] = 1
        for r, p in enumerate(elim.pivots):
            basis[p, j] = reduced[r, f]
    return BitMatrix(basis)


def solve(matrix: BitMatrix, rhs: Sequence[int]) -> Optional[np.ndarray]:
    """Some x with A x = y, or None when the system is inconsistent."""
    y = np.asarray(rhs, dtype=np.uint8).reshape(-1, 1)
    if y.shape[0] != matrix.rows:
        raise ValueError(f"right-hand side has {y.shape[0]} entries, matrix has {matrix.rows} rows")
    elim = eliminate(BitMatrix(np.hstack([matrix.bits, y])))
    if elim.pivots and elim.pivots[-1] == matrix.cols:
        return None
    x = np.zeros(matrix.cols, dtype=np.uint8)
    for r, p in enumerate(elim.pivots):
        x[p] = elim.reduced.bits[r, -1]
    return x


def inverse(matrix: BitMatrix) -> BitMatrix:
    n = matrix.rows
    if matrix.cols != n:
        raise ValueError(f"only square matrices invert, got {matrix.shape}")
    elim = eliminate(BitMatrix(np.hstack([matrix.bits, np.eye(n, dtype=np.uint8)])))
    if elim.pivots[:n] != tuple(range(n)) or (n and elim.rank < n):
        raise ValueError("matrix is singular over GF(2)")
    return BitMatrix(elim.reduced.bits[:, n:])


def rank_of_int_rows(rows: Iterable[int]) -> int:
    """Rank of rows given as integers, via an xor basis keyed by leading bit."""
    basis: dict = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in basis:
                row ^= basis[top]
            else:
                basis[top] = row
                break
    return len(basis)
