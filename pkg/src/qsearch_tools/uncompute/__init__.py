from .decomposition import UncomputableDecomposition, decomposition_from_manifest, trivial_decomposition
from .generic import GenericOracleCircuit, w_as_generic
from .rewrite import (
    AVERAGE_MODES,
    RewriteReport,
    RewriteResult,
    StepwiseRewrite,
    average_per_query,
    oppositely_ordered,
    rewrite,
    rewrite_stepwise,
    split_by_dependency,
    unrewritten_per_query,
)

__all__ = [
    "AVERAGE_MODES",
    "GenericOracleCircuit",
    "RewriteReport",
    "RewriteResult",
    "StepwiseRewrite",
    "UncomputableDecomposition",
    "average_per_query",
    "decomposition_from_manifest",
    "oppositely_ordered",
    "rewrite",
    "rewrite_stepwise",
    "split_by_dependency",
    "trivial_decomposition",
    "unrewritten_per_query",
    "w_as_generic",
]
