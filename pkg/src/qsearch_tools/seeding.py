from __future__ import annotations

from typing import List

import numpy as np


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    return [make_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def fresh_seed() -> int:
    return int(np.random.SeedSequence().entropy % (2**63))
