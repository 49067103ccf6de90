from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .schedule import DiffuserSchedule


@dataclass(frozen=True)
class AmplitudeTrace:
    values: Tuple[float, ...]

    @property
    def final(self) -> float:
        return self.values[-1]

    @property
    def success_probability(self) -> float:
        return self.final**2


def alpha_recurrence(schedule: DiffuserSchedule) -> AmplitudeTrace:
    """alpha_j = 2^{-k_j/2} (3 - 4 * 2^{-k_j}) alpha_{j-1}."""
    values = [1.0]
    for k in schedule.k:
        values.append(2 ** (-k / 2) * (3 - 4 * 2.0**-k) * values[-1])
    return AmplitudeTrace(tuple(values))


def alpha_closed_form(schedule: DiffuserSchedule) -> float:
    product = 1.0
    for k in schedule.k:
        product *= 3 - 4 * 2.0**-k
    return 2 ** (-schedule.n / 2) * product


BETA_VARIANTS = ("derived", "half_exponent")


def beta_recurrence(schedule: DiffuserSchedule, variant: str = "derived") -> AmplitudeTrace:
    """
    Target amplitudes of D_j applied to the uniform state.

    beta_j = 2^{-(k_1+..+k_j)/2} (1 - 2/2^{k_j}) + 2^{-k_j/2} (2 - 2/2^{k_j}) beta_{j-1}.
    The "half_exponent" variant writes the last factor as 2 - 2/2^{k_j/2}; it does
    not match simulation (k=(1) gives sqrt(2)-1 instead of 1/sqrt(2)) and is kept
    only for comparison tables.
    """
    if variant not in BETA_VARIANTS:
        raise ValueError(f"unknown beta variant {variant!r}")
    values = [1.0]
    covered = 0
    for k in schedule.k:
        covered += k
        tail = 2 / 2**k if variant == "derived" else 2 / 2 ** (k / 2)
        values.append(2 ** (-covered / 2) * (1 - 2 / 2**k) + 2 ** (-k / 2) * (2 - tail) * values[-1])
    return AmplitudeTrace(tuple(values))


# ----------------------------------------------------------------------
# BOUNDS
# ----------------------------------------------------------------------

def euler_product(x: int, terms: int = 64) -> float:
    z = 2.0**-x
    product = 1.0
    for j in range(1, terms + 1):
        product *= 1 - z**j
    return product


def euler_bound_holds(x: int, terms: int = 64) -> bool:
    z = 2.0**-x
    return euler_product(x, terms) >= 1 - z - z * z


def w_oracle_calls(m: int) -> int:
    return (3**m - 1) // 2


def d_oracle_calls(m: int) -> int:
    return 2**m - 1


def single_point_query_bound(n: int, x: int, m: int) -> float:
    z = 2.0**-x
    return (math.pi / 4) / (1 - z - z * z) * 2 ** (n / 2) + 2 * 3**m - 2


def d_family_query_bound(n: int, x: int, m: int) -> float:
    """D_m family: the leading term plus one extra iteration of 2^{m+1} - 1 calls. Reported only."""
    z = 2.0**-x
    return (math.pi / 4) / (1 - z - z * z) * 2 ** (n / 2) + 2 ** (m + 1) - 1


def optimal_reference(n: int) -> int:
    return math.ceil(math.pi / 4 * 2 ** (n / 2))
