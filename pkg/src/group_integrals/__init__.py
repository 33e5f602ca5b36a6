"""
Group Integrals
Haar sampling, Weingarten calculus and performance operators
"""

from .groups import GroupFamily, GroupSpec
from .rng import RngStream
from .sampling import batched_tensor_power, haar_sample, haar_samples, rotations
from .chunking import map_chunks, plan_chunks
from .weingarten import (
    cycle_type,
    gram_matrix,
    permutation_operator,
    permutations,
    symmetric_character,
    weingarten_matrix,
)
from .performance import (
    IntegrationMethod,
    PerformanceOperator,
    performance_operator_exact,
    performance_operator_mc,
    performance_operator_mc_replicates,
)

__all__ = [
    "GroupFamily",
    "GroupSpec",
    "RngStream",
    "batched_tensor_power",
    "haar_sample",
    "haar_samples",
    "rotations",
    "map_chunks",
    "plan_chunks",
    "cycle_type",
    "gram_matrix",
    "permutation_operator",
    "permutations",
    "symmetric_character",
    "weingarten_matrix",
    "IntegrationMethod",
    "PerformanceOperator",
    "performance_operator_exact",
    "performance_operator_mc",
    "performance_operator_mc_replicates",
]
