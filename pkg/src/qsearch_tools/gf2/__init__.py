from .hashing import (
    AffineMap,
    KernelParam,
    check_pairs,
    enumerate_hashes,
    hash_value_table,
    member_values,
    pairwise_independence_check,
    parametrize_kernel,
    sample_hash,
)
from .matrix import BitMatrix, Elimination, bits_to_int, eliminate, int_to_bits, inverse, kernel_basis, solve
from .stats import KernelDimDistribution, kernel_dim_distribution, wilson_interval

__all__ = [
    "AffineMap",
    "BitMatrix",
    "Elimination",
    "KernelDimDistribution",
    "KernelParam",
    "bits_to_int",
    "eliminate",
    "enumerate_hashes",
    "check_pairs",
    "hash_value_table",
    "int_to_bits",
    "inverse",
    "kernel_basis",
    "kernel_dim_distribution",
    "member_values",
    "pairwise_independence_check",
    "parametrize_kernel",
    "sample_hash",
    "solve",
    "wilson_interval",
]
