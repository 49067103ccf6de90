from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import TYPE_CHECKING, Callable, FrozenSet, Iterable, Optional

import numpy as np

from ..settings import MAX_DENSE_QUBITS

if TYPE_CHECKING:
    from ..uncompute.decomposition import UncomputableDecomposition


@dataclass(frozen=True, eq=False)
class PhaseOracleSpec:
    """
    Diagonal oracle O|x> = (-1)^{f(x)} |x>.

    Basis index x reads qubit 0 as its most significant bit. The dense mask
    over all 2^n indices is built once, from `mask_source` when given,
    otherwise by evaluating the predicate.
    """

    num_qubits: int
    predicate: Callable[[int], bool]
    marked_set: Optional[FrozenSet[int]] = None
    decomposition: Optional["UncomputableDecomposition"] = None
    single_marked: bool = False
    mask_source: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.num_qubits <= MAX_DENSE_QUBITS:
            raise ValueError(f"oracle width {self.num_qubits} outside [0, {MAX_DENSE_QUBITS}]")
        if self.marked_set is not None:
            marked = frozenset(int(v) for v in self.marked_set)
            object.__setattr__(self, "marked_set", marked)
            if any(not 0 <= v < 2**self.num_qubits for v in marked):
                raise ValueError("marked element outside the search space")
            if self.single_marked and len(marked) != 1:
                raise ValueError(f"single-marked oracle has {len(marked)} marked elements")
        if self.mask_source is not None and self.mask_source.shape != (2**self.num_qubits,):
            raise ValueError("mask length does not match oracle width")

    # ------------------------------------------------------------------

    @classmethod
    def from_marked(cls, num_qubits: int, marked: Iterable[int], single: bool = False) -> "PhaseOracleSpec":
        marked_set = frozenset(int(v) for v in marked)
        if any(not 0 <= v < 2**num_qubits for v in marked_set):
            raise ValueError("marked element outside the search space")
        mask = np.zeros(2**num_qubits, dtype=bool)
        if marked_set:
            mask[list(marked_set)] = True
        return cls(num_qubits, marked_set.__contains__, marked_set, single_marked=single, mask_source=mask)

    @classmethod
    def from_mask(cls, mask: np.ndarray, decomposition=None) -> "PhaseOracleSpec":
        mask = np.asarray(mask, dtype=bool).copy()
        n = int(mask.size).bit_length() - 1
        if mask.size != 2**n:
            raise ValueError("mask length must be a power of two")
        mask.setflags(write=False)
        return cls(n, lambda i: bool(mask[i]), decomposition=decomposition, mask_source=mask)

    @classmethod
    def from_predicate(cls, num_qubits: int, predicate: Callable[[int], bool]) -> "PhaseOracleSpec":
        return cls(num_qubits, predicate)

    def with_decomposition(self, decomposition) -> "PhaseOracleSpec":
        return replace(self, decomposition=decomposition)

    # ------------------------------------------------------------------

    @cached_property
    def mask(self) -> np.ndarray:
        if self.mask_source is not None:
            mask = np.asarray(self.mask_source, dtype=bool)
        else:
            size = 2**self.num_qubits
            mask = np.fromiter((bool(self.predicate(i)) for i in range(size)), dtype=bool, count=size)
        if self.marked_set is not None and frozenset(np.flatnonzero(mask).tolist()) != self.marked_set:
            raise ValueError("marked set disagrees with the predicate")
        mask = mask.copy()
        mask.setflags(write=False)
        return mask

    @cached_property
    def phase(self) -> np.ndarray:
        return np.where(self.mask, -1.0, 1.0)

    def is_marked(self, index: int) -> bool:
        return bool(self.predicate(int(index)))

    def marked(self) -> FrozenSet[int]:
        if self.marked_set is not None:
            return self.marked_set
        return frozenset(np.flatnonzero(self.mask).tolist())

    @property
    def num_marked(self) -> int:
        return int(self.mask.sum())
