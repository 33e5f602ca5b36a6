"""
Dense linear algebra for performance operators
Choi vectors, Kronecker powers, Hermitian eigendecomposition, support projectors, D_max
"""

import logging
from functools import reduce
from typing import Any, Tuple

import numpy as np
import scipy.linalg

from src.errors import ConvergenceError, NonPSDError, SizeGuardError
from .operators import HermitianOperator, as_complex_matrix

logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-10
MAX_SIDE = 2 ** 14


def choi_vec(unitary: Any) -> np.ndarray:
    """
    Choi vector |U⟩⟩ = Σ u_{k,k'} |k, k'⟩.

    Component u_{k,k'} sits at index k·m + k' (row-major flattening); the vector
    is not normalized, its squared norm is Tr U†U.
    """
    matrix = as_complex_matrix(unitary)
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Choi vector needs a square matrix, got shape {matrix.shape}")
    return matrix.reshape(-1).copy()


def kron(a: Any, b: Any) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_SIDE:
        raise SizeGuardError(f"Kronecker product of side {max(rows, cols)} exceeds {MAX_SIDE}")
    return np.kron(a, b)


def tensor_power(unitary: Any, n: int) -> np.ndarray:
    """U^{⊗n}; the zeroth power is the 1x1 identity"""
    matrix = np.asarray(unitary, dtype=complex)
    if n < 0:
        raise ValueError(f"tensor power must be nonnegative, got {n}")
    if matrix.shape[0] ** n > MAX_SIDE:
        raise SizeGuardError(f"tensor power of side {matrix.shape[0] ** n} exceeds {MAX_SIDE}")
    return reduce(np.kron, [matrix] * n, np.eye(1, dtype=complex))


def hermitian_eig(operator: HermitianOperator) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition A = V diag(e) V†.

    Returns:
        Tuple of (ascending real eigenvalues, orthonormal eigenvector columns)

    Raises:
        ConvergenceError: LAPACK failure or residual above 1e-9 · side · ‖A‖_max
    """
    matrix = operator.matrix
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ConvergenceError(f"eigendecomposition failed: {e}", residual=float("inf"))

    scale = max(operator.max_abs(), np.finfo(float).tiny)
    residual = float(np.max(np.abs(matrix @ eigenvectors - eigenvectors * eigenvalues))) if matrix.size else 0.0
    bound = 1e-9 * operator.side * scale
    if residual > bound:
        raise ConvergenceError(f"eigendecomposition residual {residual:.3e} exceeds {bound:.3e}", residual=residual)
    return eigenvalues, eigenvectors


def _check_psd(eigenvalues: np.ndarray, rtol: float, name: str) -> None:
    top = max(float(eigenvalues[-1]), 0.0)
    if eigenvalues[0] < -rtol * top - np.finfo(float).eps:
        raise NonPSDError(f"{name} has eigenvalue {eigenvalues[0]:.3e} below -{rtol:.0e}·{top:.3e}")


def _support_basis(operator: HermitianOperator, rtol: float, name: str = "operator") -> Tuple[np.ndarray, np.ndarray]:
    eigenvalues, eigenvectors = hermitian_eig(operator)
    _check_psd(eigenvalues, rtol, name)
    keep = eigenvalues > rtol * max(float(eigenvalues[-1]), 0.0)
    return eigenvalues[keep], eigenvectors[:, keep]


def support_projector(operator: HermitianOperator, rtol: float = DEFAULT_RTOL) -> HermitianOperator:
    """Projector onto eigenspaces with eigenvalue above rtol · max eigenvalue"""
    _, basis = _support_basis(operator, rtol)
    return HermitianOperator.symmetrized(basis @ basis.conj().T)


def dmax_numeric(p: HermitianOperator, q: HermitianOperator, rtol: float = DEFAULT_RTOL) -> float:
    """
    Max-relative entropy D_max(P || Q) = min{t : e^t Q ⪰ P} (natural log).

    Returns +inf when supp(P) is not contained in supp(Q).
    """
    if p.side != q.side:
        raise ValueError(f"operators act on different spaces: {p.side} vs {q.side}")

    p_eigenvalues, _ = hermitian_eig(p)
    _check_psd(p_eigenvalues, rtol, "P")
    q_values, q_basis = _support_basis(q, rtol, "Q")

    p_matrix = p.matrix
    p_norm = max(float(p_eigenvalues[-1]), 0.0)
    complement = np.eye(q.side) - q_basis @ q_basis.conj().T
    leak = complement @ p_matrix @ complement
    leak_norm = float(np.max(np.abs(scipy.linalg.eigvalsh(0.5 * (leak + leak.conj().T))))) if q.side else 0.0
    if leak_norm > rtol * p_norm:
        logger.debug(f"supp(P) not inside supp(Q): leak {leak_norm:.3e} > {rtol:.0e}·{p_norm:.3e}")
        return float("inf")

    scale = 1.0 / np.sqrt(q_values)
    sandwiched = scale[:, None] * (q_basis.conj().T @ p_matrix @ q_basis) * scale[None, :]
    top = float(scipy.linalg.eigvalsh(0.5 * (sandwiched + sandwiched.conj().T))[-1])
    if top <= 0:
        return float("-inf")
    return float(np.log(top))
