from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional


@dataclass
class SearchTelemetry:
    """Running totals for one search; every field only grows."""

    oracle_queries: int = 0
    non_oracle_basic_gates: int = 0
    trials: int = 0
    classical_checks: int = 0
    seed: Optional[int] = None

    def add(self, queries: int = 0, gates: int = 0) -> None:
        if queries < 0 or gates < 0:
            raise ValueError("telemetry only accumulates")
        self.oracle_queries += queries
        self.non_oracle_basic_gates += gates

    def check(self) -> None:
        self.classical_checks += 1
        self.oracle_queries += 1

    def trial(self) -> None:
        self.trials += 1

    def merge(self, other: "SearchTelemetry") -> None:
        self.oracle_queries += other.oracle_queries
        self.non_oracle_basic_gates += other.non_oracle_basic_gates
        self.trials += other.trials
        self.classical_checks += other.classical_checks

    def to_dict(self) -> dict:
        return asdict(self)
