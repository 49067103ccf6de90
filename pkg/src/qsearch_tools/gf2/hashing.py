"""
The affine hash family x -> A x + b over GF(2) and the sparse parametrization
of a hash kernel used by the multi-element search.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..errors import EnumerationBudgetError
from ..seeding import make_rng
from ..settings import ENUMERATION_BUDGET_BITS
from .matrix import BitMatrix, bits_to_int, eliminate, int_to_bits, inverse, kernel_basis, solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AffineMap:
    A: BitMatrix
    b: np.ndarray

    def __post_init__(self) -> None:
        b = (np.asarray(self.b, dtype=np.int64) & 1).astype(np.uint8).reshape(-1)
        if b.size != self.A.rows:
            raise ValueError(f"offset has {b.size} bits, matrix has {self.A.rows} rows")
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def k(self) -> int:
        return self.A.rows

    def __call__(self, x) -> np.ndarray:
        return (self.A @ x) ^ self.b

    def evaluate_int(self, x: int) -> int:
        return bits_to_int(self(int_to_bits(x, self.n)))

    def in_kernel(self, x: int) -> bool:
        return not np.any(self(int_to_bits(x, self.n)))

    def kernel_elements(self) -> List[int]:
        return [x for x in range(2**self.n) if self.in_kernel(x)]

    def to_dict(self) -> dict:
        return {"A": self.A.to_dict(), "b": [int(v) for v in self.b]}


@dataclass(frozen=True, eq=False)
class KernelParam:
    """
    Injective g(i) = C i + p with image equal to the kernel of a hash.

    C restricted to `pivot_rows` is the identity, so every column of C has at
    most n - d + 1 ones, and p vanishes on those rows.
    """

    C: BitMatrix
    p: np.ndarray
    pivot_rows: Tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.C.rows

    @property
    def d(self) -> int:
        return self.C.cols

    def apply_bits(self, i) -> np.ndarray:
        return (self.C @ np.asarray(i, dtype=np.uint8)) ^ self.p

    def apply(self, i: int) -> int:
        return bits_to_int(self.apply_bits(int_to_bits(i, self.d)))

    def image_array(self) -> np.ndarray:
        d, n = self.d, self.n
        index = np.arange(2**d, dtype=np.int64)
        ibits = (index[:, None] >> (d - 1 - np.arange(d))) & 1
        ybits = ((ibits @ self.C.bits.T.astype(np.int64)) & 1) ^ self.p.astype(np.int64)
        return ybits @ (np.int64(1) << (n - 1 - np.arange(n, dtype=np.int64)))

    def image(self) -> List[int]:
        return self.image_array().tolist()

    def column_weights(self) -> Tuple[int, ...]:
        return self.C.column_weights()

    def to_dict(self) -> dict:
        return {"C": self.C.to_dict(), "p": [int(v) for v in self.p], "pivot_rows": list(self.pivot_rows)}


def parametrize_kernel(h: AffineMap) -> Optional[KernelParam]:
    p0 = solve(h.A, h.b)
    if p0 is None:
        logger.debug("hash kernel is empty")
        return None
    raw = kernel_basis(h.A)
    d = raw.cols
    if d == 0:
        return KernelParam(BitMatrix.zeros(h.n, 0), p0, ())
    rows = eliminate(raw.T).pivots
    C = raw @ inverse(raw.select_rows(rows))
    p = p0 ^ (C @ p0[list(rows)])
    return KernelParam(C, p, tuple(rows))


def sample_hash(n: int, k: int, rng: np.random.Generator) -> AffineMap:
    if n < 1 or k < 1:
        raise ValueError(f"hash family needs n, k >= 1, got n={n} k={k}")
    A = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
    b = rng.integers(0, 2, size=k, dtype=np.uint8)
    return AffineMap(BitMatrix(A), b)


def _check_budget(n: int, k: int) -> None:
    if k * n + k > ENUMERATION_BUDGET_BITS:
        raise EnumerationBudgetError(
            f"enumerating H_{{{n},{k}}} needs 2^{k * n + k} maps, budget is 2^{ENUMERATION_BUDGET_BITS}"
        )


def enumerate_hashes(n: int, k: int) -> Iterator[AffineMap]:
    _check_budget(n, k)
    for rows in itertools.product(range(2**n), repeat=k):
        A = BitMatrix.from_int_rows(rows, n)
        for b in range(2**k):
            yield AffineMap(A, int_to_bits(b, k))


# ----------------------------------------------------------------------
# EXHAUSTIVE TABLES
# ----------------------------------------------------------------------

def member_values(n: int, k: int, x: int, offset: bool = True) -> np.ndarray:
    """h(x) for every family member, rows ordered as in hash_value_table."""
    _check_budget(n, k)
    masked = np.arange(2**n, dtype=np.int64) & int(x)
    parity = np.zeros(2**n, dtype=np.int64)
    for _ in range(n):
        parity ^= masked & 1
        masked >>= 1
    linear = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        linear = ((linear[:, None] << 1) | parity[None, :]).reshape(-1)
    offsets = np.arange(2**k, dtype=np.int64) if offset else np.zeros(1, dtype=np.int64)
    return (offsets[:, None] ^ linear[None, :]).reshape(-1)


def hash_value_table(n: int, k: int, offset: bool = True) -> np.ndarray:
    """
    Rows are family members, columns inputs x, entries h(x) as integers.

    Members are ordered by (b, row_1, ..., row_k); output bit t comes from row t.
    With offset=False every member has b = 0.
    """
    dtype = np.uint8 if k <= 8 else np.int64
    return np.stack([member_values(n, k, x, offset).astype(dtype) for x in range(2**n)], axis=1)


# ----------------------------------------------------------------------
# PAIRWISE INDEPENDENCE
# ----------------------------------------------------------------------

BRUTE_FORCE_CELLS = 2**22
SAMPLED_PAIRS = 256


def _uniform(counts: np.ndarray, members: int) -> bool:
    return bool(np.all(counts * counts.size == members))


def _pairwise_brute_force(n: int, k: int, offset: bool) -> bool:
    table = hash_value_table(n, k, offset)
    members = table.shape[0]
    outputs = 2**k
    for x in range(2**n):
        if not _uniform(np.bincount(table[:, x], minlength=outputs), members):
            return False
    for x1 in range(2**n):
        for x2 in range(x1 + 1, 2**n):
            pair = table[:, x1].astype(np.int64) * outputs + table[:, x2]
            if not _uniform(np.bincount(pair, minlength=outputs * outputs), members):
                return False
    return True


def check_pairs(n: int, rng: np.random.Generator, sampled: int = SAMPLED_PAIRS) -> List[Tuple[int, int]]:
    """All pairs among 0, the unit vectors and all-ones, then `sampled` random distinct pairs."""
    points = sorted({0, 2**n - 1} | {1 << i for i in range(n)})
    pairs = set(itertools.combinations(points, 2))
    target = min(len(pairs) + sampled, 2 ** (2 * n - 1) - 2 ** (n - 1))
    while len(pairs) < target:
        x1, x2 = (int(v) for v in rng.integers(0, 2**n, size=2))
        if x1 != x2:
            pairs.add((min(x1, x2), max(x1, x2)))
    return sorted(pairs)


def _pairwise_on_pairs(n: int, k: int, offset: bool, pairs: List[Tuple[int, int]]) -> bool:
    outputs = 2**k
    values = {}
    for x in sorted({x for pair in pairs for x in pair}):
        values[x] = member_values(n, k, x, offset)
        if not _uniform(np.bincount(values[x], minlength=outputs), values[x].size):
            return False
    for x1, x2 in pairs:
        joint = values[x1] * outputs + values[x2]
        if not _uniform(np.bincount(joint, minlength=outputs * outputs), joint.size):
            logger.info("pair (%d, %d) is not uniformly distributed over the family", x1, x2)
            return False
    return True


def pairwise_independence_check(
    n: int,
    k: int,
    offset: bool = True,
    rng: Optional[np.random.Generator] = None,
) -> bool:
    """
    True iff P(h(x) = y) = 2^-k and P(h(x1) = y1, h(x2) = y2) = 4^-k, exactly,
    over the whole family. offset=False drops b (a family that fails).

    Small families are checked on every pair of inputs. Larger ones are counted
    exactly over all members, on the pairs from check_pairs.
    """
    _check_budget(n, k)
    members = 2 ** (k * n + (k if offset else 0))
    if members * 4**n <= BRUTE_FORCE_CELLS:
        return _pairwise_brute_force(n, k, offset)
    pairs = check_pairs(n, rng if rng is not None else make_rng(0))
    logger.debug("pairwise check of H_{%d,%d} on %d input pairs", n, k, len(pairs))
    return _pairwise_on_pairs(n, k, offset, pairs)
