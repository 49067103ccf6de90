from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from ..errors import ScheduleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiffuserSchedule:
    """Diffuser sizes k_1..k_m; diffuser j covers the j-th contiguous block of qubits."""

    k: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        if any(v < 1 for v in self.k):
            raise ScheduleError(f"diffuser sizes must be positive, got {self.k}")

    @classmethod
    def of(cls, sizes: Sequence[int]) -> "DiffuserSchedule":
        return cls(tuple(sizes))

    @classmethod
    def parse(cls, text: str) -> "DiffuserSchedule":
        try:
            return cls(tuple(int(part) for part in text.replace(" ", "").split(",") if part))
        except ValueError:
            raise ScheduleError(f"cannot parse schedule {text!r}") from None

    @property
    def n(self) -> int:
        return sum(self.k)

    @property
    def m(self) -> int:
        return len(self.k)

    def block(self, j: int) -> Tuple[int, ...]:
        if not 1 <= j <= self.m:
            raise ScheduleError(f"block {j} outside 1..{self.m}")
        start = sum(self.k[: j - 1])
        return tuple(range(start, start + self.k[j - 1]))

    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.block(j) for j in range(1, self.m + 1))

    def prefix(self, j: int) -> "DiffuserSchedule":
        return DiffuserSchedule(self.k[:j])

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.k)


@dataclass(frozen=True)
class ScheduleParams:
    n: int
    x: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ScheduleError("n must be at least 1")
        if self.x < 1:
            raise ScheduleError("x must be at least 1")

    def schedule(self) -> DiffuserSchedule:
        return schedule_from_x(self.n, self.x)


def schedule_from_x(n: int, x: int) -> DiffuserSchedule:
    """
    k_j = (x+1) j for j < m, with m the largest count whose sizes fit in n;
    k_m absorbs what is left. When not even k_1 = x+1 fits, one diffuser covers n.
    """
    ScheduleParams(n, x)
    step = x + 1
    m = 0
    used = 0
    while used + step * (m + 1) <= n:
        m += 1
        used += step * m
    if m == 0:
        logger.warning("n=%d is smaller than x+1=%d; using a single diffuser", n, step)
        return DiffuserSchedule((n,))
    sizes = [step * j for j in range(1, m)]
    sizes.append(n - sum(sizes))
    return DiffuserSchedule(tuple(sizes))
