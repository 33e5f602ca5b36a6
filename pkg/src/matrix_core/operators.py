"""
Dense operator types
Immutable numpy-backed wrappers for Hermitian operators and pure states
"""

from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np

from src.errors import NonHermitianError

HERMITIAN_RTOL = 1e-12
NORM_TOL = 1e-12


def as_complex_matrix(matrix: Any) -> np.ndarray:
    """Validate a 2-D finite array and return a read-only complex copy"""
    array = np.array(matrix, dtype=complex)
    if array.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("matrix contains non-finite entries")
    array.setflags(write=False)
    return array


def complex_to_pairs(array: np.ndarray) -> List:
    """Nested [re, im] lists for JSON export"""
    return np.stack([array.real, array.imag], axis=-1).tolist()


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Square Hermitian matrix; checked at construction"""
    matrix: np.ndarray

    def __post_init__(self):
        array = as_complex_matrix(self.matrix)
        if array.shape[0] != array.shape[1]:
            raise NonHermitianError(f"operator must be square, got shape {array.shape}")
        scale = np.max(np.abs(array)) if array.size else 0.0
        deviation = np.max(np.abs(array - array.conj().T)) if array.size else 0.0
        if deviation > HERMITIAN_RTOL * scale:
            raise NonHermitianError(f"‖A - A†‖_max = {deviation:.3e} exceeds {HERMITIAN_RTOL:.0e}·‖A‖_max")
        object.__setattr__(self, "matrix", array)

    @classmethod
    def symmetrized(cls, matrix: Any) -> "HermitianOperator":
        array = np.asarray(matrix, dtype=complex)
        return cls(0.5 * (array + array.conj().T))

    @classmethod
    def identity(cls, side: int) -> "HermitianOperator":
        return cls(np.eye(side, dtype=complex))

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    def to_dict(self) -> Dict[str, Any]:
        return {"side": self.side, "matrix": complex_to_pairs(self.matrix)}


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector"""
    amplitudes: np.ndarray

    def __post_init__(self):
        vector = np.array(self.amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(vector)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm:.15f} differs from 1")
        vector.setflags(write=False)
        object.__setattr__(self, "amplitudes", vector)

    @classmethod
    def normalized(cls, vector: Any) -> "PureState":
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        return cls(vector / np.linalg.norm(vector))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> HermitianOperator:
        return HermitianOperator.symmetrized(np.outer(self.amplitudes, self.amplitudes.conj()))

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "amplitudes": complex_to_pairs(self.amplitudes)}
