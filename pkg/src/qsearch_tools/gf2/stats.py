from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Dict, List, Tuple

import numpy as np

from .matrix import rank_of_int_rows

logger = logging.getLogger(__name__)


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> Tuple[float, float]:
    if trials <= 0:
        raise ValueError("wilson interval needs at least one trial")
    if not 0 <= successes <= trials:
        raise ValueError(f"{successes} successes out of {trials} trials")
    z = NormalDist().inv_cdf(1 - (1 - confidence) / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class KernelDimDistribution:
    """dim ker h over sampled hashes; `empty` counts hashes whose kernel has no element."""

    n: int
    k: int
    trials: int
    counts: Dict[int, int] = field(default_factory=dict)
    empty: int = 0

    def frequency(self, d: int) -> float:
        return self.counts.get(d, 0) / self.trials

    def tail_count(self, threshold: int) -> int:
        return sum(c for d, c in self.counts.items() if d >= threshold)

    def tail(self, threshold: int, confidence: float = 0.99) -> Tuple[float, float, float]:
        hits = self.tail_count(threshold)
        low, high = wilson_interval(hits, self.trials, confidence)
        return hits / self.trials, low, high

    def rows(self, confidence: float = 0.99) -> List[Tuple[str, int, float, float, float]]:
        out = []
        for d in range(self.n + 1):
            c = self.counts.get(d, 0)
            low, high = wilson_interval(c, self.trials, confidence)
            out.append((str(d), c, c / self.trials, low, high))
        low, high = wilson_interval(self.empty, self.trials, confidence)
        out.append(("empty", self.empty, self.empty / self.trials, low, high))
        return out

    def to_csv(self, confidence: float = 0.99) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["d", "count", "frequency", "ci_low", "ci_high"])
        for d, c, freq, low, high in self.rows(confidence):
            writer.writerow([d, c, repr(freq), repr(low), repr(high)])
        return buf.getvalue()


def kernel_dim_distribution(n: int, k: int, trials: int, rng: np.random.Generator) -> KernelDimDistribution:
    """
    Sample h(x) = A x + b and record dim ker h = n - rank(A) when A x = b is
    consistent. Rows are drawn as n-bit integers.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rows = rng.integers(0, 2**n, size=(trials, k), dtype=np.int64)
    offsets = rng.integers(0, 2**k, size=trials, dtype=np.int64)
    counts: Dict[int, int] = {}
    empty = 0
    for t in range(trials):
        linear = [int(r) for r in rows[t]]
        rank = rank_of_int_rows(linear)
        augmented = [(r << 1) | ((int(offsets[t]) >> (k - 1 - i)) & 1) for i, r in enumerate(linear)]
        if rank_of_int_rows(augmented) > rank:
            empty += 1
            continue
        d = n - rank
        counts[d] = counts.get(d, 0) + 1
    logger.info("kernel dimensions n=%d k=%d over %d trials: %s, empty %d", n, k, trials, counts, empty)
    return KernelDimDistribution(n, k, trials, dict(sorted(counts.items())), empty)
