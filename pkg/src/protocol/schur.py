"""
Qubit Schur basis by iterated Clebsch–Gordan coupling

Each block is one copy of a spin-J irrep inside (C^2)^{⊗n}. Rows of a block are
|J, M⟩ vectors with M descending; |0⟩ is spin up. Copies are told apart by their
coupling path (the sequence of intermediate 2J values).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from config.config import config
from src.errors import EmbeddingError, InconsistencyError
from src.group_integrals import (
    GroupSpec,
    IntegrationMethod,
    PerformanceOperator,
    RngStream,
    haar_samples,
)
from src.matrix_core import HermitianOperator, tensor_power
from src.rep_core import IrrepLabel, u2_irrep_decomposition

logger = logging.getLogger(__name__)

MAX_QUBITS = 6
GRAM_TOL = 1e-10
LEAKAGE_SAMPLES = 20
LEAKAGE_SEED = 314159

_UP = np.array([1.0, 0.0])
_DOWN = np.array([0.0, 1.0])


def cg_half(two_j: int, two_big_j: int, two_m: int, spin: int) -> float:
    """⟨j, m - spin/2; 1/2, spin/2 | J, m⟩ for J = j ± 1/2, spin = ±1 (all angular momenta doubled)"""
    ll1 = two_j + 1
    if two_big_j == two_j + 1:
        if spin > 0:
            return float(np.sqrt(0.5 * (ll1 + two_m) / ll1))
        return float(np.sqrt(0.5 * (ll1 - two_m) / ll1))
    if two_big_j == two_j - 1:
        if spin > 0:
            return -float(np.sqrt(0.5 * (ll1 - two_m) / ll1))
        return float(np.sqrt(0.5 * (ll1 + two_m) / ll1))
    return 0.0


@dataclass(frozen=True, eq=False)
class SchurBlock:
    label: IrrepLabel
    copy: int
    path: Tuple[int, ...]
    vectors: np.ndarray  # shape (2J + 1, 2^n)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def embed(self, coords: np.ndarray) -> np.ndarray:
        """Vector of the full space from coordinates in this copy's |J, M⟩ basis"""
        return np.asarray(coords) @ self.vectors


@dataclass(frozen=True, eq=False)
class SchurBasis:
    n: int
    blocks: Tuple[SchurBlock, ...]

    def copies(self, label: IrrepLabel) -> List[SchurBlock]:
        return [b for b in self.blocks if b.label == label]

    def matrix(self) -> np.ndarray:
        """Unitary whose rows are all basis vectors, block by block"""
        return np.vstack([b.vectors for b in self.blocks])

    def irrep_matrix(self, label: IrrepLabel, operator: np.ndarray) -> np.ndarray:
        """Matrix of an operator on (C^2)^{⊗n} restricted to the first copy of label"""
        vectors = self.copies(label)[0].vectors
        return vectors.conj() @ operator @ vectors.T

    def multiplicities(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for b in self.blocks:
            counts[b.label.two_j] = counts.get(b.label.two_j, 0) + 1
        return counts


def _couple(n: int, blocks: List[Tuple[Tuple[int, ...], np.ndarray]]):
    """Couple one more qubit (appended as the last tensor factor) to every block"""
    coupled = []
    for path, vectors in blocks:
        two_j = path[-1]
        # row i of `vectors` carries 2m = two_j - 2i
        for two_big_j in (two_j + 1, two_j - 1):
            if two_big_j < 0:
                continue
            rows = []
            for two_m in range(two_big_j, -two_big_j - 1, -2):
                vec = np.zeros(2 ** (n + 1))
                for spin, single in ((1, _UP), (-1, _DOWN)):
                    inner = two_m - spin
                    if abs(inner) > two_j:
                        continue
                    vec += cg_half(two_j, two_big_j, two_m, spin) * np.kron(vectors[(two_j - inner) // 2], single)
                rows.append(vec)
            coupled.append((path + (two_big_j,), np.array(rows)))
    return coupled


def check_leakage(basis: SchurBasis, samples: int = LEAKAGE_SAMPLES, seed: int = LEAKAGE_SEED) -> float:
    """Largest component of U^{⊗n}·(block vector) outside its own copy, over random U"""
    worst = 0.0
    for unitary in haar_samples(GroupSpec.unitary_full(2), samples, RngStream(seed)):
        power = tensor_power(unitary, basis.n)
        for block in basis.blocks:
            images = power @ block.vectors.T
            inside = block.vectors.T @ (block.vectors.conj() @ images)
            worst = max(worst, float(np.max(np.abs(images - inside))))
    return worst


@lru_cache(maxsize=None)
def schur_basis(n: int) -> SchurBasis:
    """
    Schur basis of (C^2)^{⊗n}.

    Args:
        n: Number of qubits (1 <= n <= 6)

    Returns:
        SchurBasis with blocks ordered by (2J, coupling path)

    Raises:
        EmbeddingError: Gram deviation or leakage above tolerance
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"Schur basis supports 1 <= n <= {MAX_QUBITS}, got {n}")

    raw = [((1,), np.array([_UP, _DOWN]))]
    for k in range(1, n):
        raw = _couple(k, raw)
    raw.sort(key=lambda item: (item[0][-1], item[0]))

    blocks = []
    copy_counter: Dict[int, int] = {}
    for path, vectors in raw:
        two_j = path[-1]
        copy = copy_counter.get(two_j, 0)
        copy_counter[two_j] = copy + 1
        blocks.append(SchurBlock(IrrepLabel.from_two_j(n, two_j), copy, path, vectors))
    basis = SchurBasis(n=n, blocks=tuple(blocks))

    expected = {comp.label.two_j: comp.mult for comp in u2_irrep_decomposition(n)}
    if basis.multiplicities() != expected:
        raise InconsistencyError(f"Schur block counts {basis.multiplicities()} differ from {expected}")

    full = basis.matrix()
    gram = float(np.max(np.abs(full @ full.conj().T - np.eye(2 ** n))))
    if gram > GRAM_TOL:
        raise EmbeddingError(f"Schur basis Gram deviation {gram:.3e} for n={n}")
    leak = check_leakage(basis)
    if leak > config.protocol.leakage_tol:
        raise EmbeddingError(f"Schur block leakage {leak:.3e} exceeds {config.protocol.leakage_tol:.0e} for n={n}")

    logger.debug(f"Schur basis for n={n}: {len(blocks)} blocks, gram {gram:.1e}, leakage {leak:.1e}")
    return basis


def performance_operator_blocks(n: int) -> PerformanceOperator:
    """
    Haar performance operator of U(2) from the block form ⊕_λ d_λ⁻¹ (identity on U_λ ⊗ U_λ),
    paired across multiplicity copies, written in the computational Choi basis.
    """
    basis = schur_basis(n)
    side = 2 ** n
    out = np.zeros((side * side, side * side), dtype=complex)
    for comp in u2_irrep_decomposition(n):
        copies = basis.copies(comp.label)
        for a in range(comp.dim):
            for b in range(comp.dim):
                w = sum(np.kron(block.vectors[a], block.vectors[b].conj()) for block in copies)
                out += np.outer(w, w.conj()) / comp.dim
    return PerformanceOperator(
        op=HermitianOperator.symmetrized(out),
        method=IntegrationMethod.ANALYTIC_BLOCKS,
        n=n,
        d=2,
    )
