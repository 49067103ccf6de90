from .algorithms import (
    UnknownSearchResult,
    amplification_trials,
    hash_width,
    loader_gate_cost,
    multi_point,
    multi_point_amplified,
    multi_point_success_probability,
    multi_point_unknown,
    unique_intersection_probability,
)
from .restricted import RestrictedOracle, build_Dg, lift_decomposition, restrict_oracle
from .telemetry import SearchTelemetry

__all__ = [
    "RestrictedOracle",
    "SearchTelemetry",
    "UnknownSearchResult",
    "amplification_trials",
    "build_Dg",
    "hash_width",
    "lift_decomposition",
    "loader_gate_cost",
    "multi_point",
    "multi_point_amplified",
    "multi_point_success_probability",
    "multi_point_unknown",
    "restrict_oracle",
    "unique_intersection_probability",
]
