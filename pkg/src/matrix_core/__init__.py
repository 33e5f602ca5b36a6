"""
Matrix Core
Dense complex linear algebra for Choi vectors and max-relative entropy
"""

from .operators import HermitianOperator, PureState, as_complex_matrix, complex_to_pairs
from .linalg import (
    DEFAULT_RTOL,
    choi_vec,
    dmax_numeric,
    hermitian_eig,
    kron,
    support_projector,
    tensor_power,
)

__all__ = [
    "HermitianOperator",
    "PureState",
    "as_complex_matrix",
    "complex_to_pairs",
    "DEFAULT_RTOL",
    "choi_vec",
    "dmax_numeric",
    "hermitian_eig",
    "kron",
    "support_projector",
    "tensor_power",
]
