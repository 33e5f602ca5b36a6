"""
Performance operators ρ = E_g |f(g)⟩⟩⟨⟨f(g)| for f(g) = g^{⊗n}

Exact paths:
- Trivial group: the single rank-one term |I⟩⟩⟨⟨I|
- Torus: phase matching of digit multisets
- O(2): rotation and reflection halves integrated in the eigenbasis of the rotations
- U(d): Weingarten sum over pairs of permutations
Monte Carlo averages sampled Choi projectors chunk by chunk.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from config.config import config
from src.errors import NonPSDError, SizeGuardError
from src.matrix_core import HermitianOperator, hermitian_eig
from .chunking import map_chunks
from .groups import GroupFamily, GroupSpec
from .rng import RngStream
from .sampling import batched_tensor_power, haar_samples
from .weingarten import inverse, compose, permutation_operator, permutations, weingarten_matrix

logger = logging.getLogger(__name__)

WEINGARTEN_MAX_SIDE = 4096
MIN_SHOTS = 100
TRACE_RTOL = 1e-6
EXACT_TRACE_RTOL = 1e-12
PSD_TOL = 1e-9


class IntegrationMethod(Enum):
    EXACT_TRIVIAL = "exact_trivial"
    EXACT_TORUS = "exact_torus"
    EXACT_O2 = "exact_o2"
    WEINGARTEN = "weingarten"
    MONTE_CARLO = "monte_carlo"
    ANALYTIC_BLOCKS = "analytic_blocks"


@dataclass(frozen=True, eq=False)
class PerformanceOperator:
    """Averaged Choi projector of n parallel queries"""
    op: HermitianOperator
    method: IntegrationMethod
    n: int
    d: int
    stderr: Optional[float] = None

    def __post_init__(self):
        if (self.stderr is not None) != (self.method is IntegrationMethod.MONTE_CARLO):
            raise ValueError("stderr is set exactly for Monte Carlo operators")
        expected = float(self.d ** self.n)
        rtol = TRACE_RTOL if self.method is IntegrationMethod.MONTE_CARLO else EXACT_TRACE_RTOL
        if abs(self.op.trace - expected) > rtol * expected:
            raise ValueError(f"performance operator trace {self.op.trace:.15g} differs from d^n = {expected:g}")
        lowest = float(scipy.linalg.eigvalsh(self.op.matrix, subset_by_index=[0, 0])[0])
        if lowest < -PSD_TOL:
            raise NonPSDError(f"performance operator has eigenvalue {lowest:.3e} below -{PSD_TOL:g}")

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    def min_eigenvalue(self) -> float:
        eigenvalues, _ = hermitian_eig(self.op)
        return float(eigenvalues[0])

    def summary(self) -> Dict[str, Any]:
        return {"method": self.method.value, "n": self.n, "d": self.d, "side": self.op.side, "stderr": self.stderr}


def _digits(n: int, d: int) -> np.ndarray:
    """Digit matrix of shape (d^n, n), most significant factor first"""
    if n == 0:
        return np.zeros((1, 0), dtype=int)
    return np.array(np.unravel_index(np.arange(d ** n), (d,) * n)).T


def _diagonal_indices(side: int) -> np.ndarray:
    # Choi index of |k, k⟩
    return np.arange(side) * side + np.arange(side)


def _exact_trivial(n: int, d: int) -> np.ndarray:
    side = d ** n
    vec = np.zeros(side * side, dtype=complex)
    vec[_diagonal_indices(side)] = 1.0
    return np.outer(vec, vec)


def _exact_torus(n: int, d: int) -> np.ndarray:
    side = d ** n
    # per-mode phase exponents cancel iff the occupation counts agree
    counts = np.stack([np.sum(_digits(n, d) == a, axis=1) for a in range(d)], axis=1)
    match = np.all(counts[:, None, :] == counts[None, :, :], axis=2)
    out = np.zeros((side * side, side * side), dtype=complex)
    diag = _diagonal_indices(side)
    out[np.ix_(diag, diag)] = match
    return out


_E_BASIS = np.array([[1, 1], [1j, -1j]]) / np.sqrt(2)


def _exact_o2(n: int) -> np.ndarray:
    side = 2 ** n
    digits = _digits(n, 2)
    # e0 (digit 0) has rotation eigenvalue e^{-iθ}, e1 has e^{+iθ}
    charge = np.sum(1 - 2 * digits, axis=1)
    same = (charge[:, None] == charge[None, :]).astype(complex)
    complement = side - 1 - np.arange(side)

    rho_e = np.zeros((side * side, side * side), dtype=complex)
    diag = _diagonal_indices(side)
    rho_e[np.ix_(diag, diag)] += 0.5 * same
    # the reflection F swaps e0 and e1: entries sit at Choi index (k̄', k')
    flipped = complement * side + np.arange(side)
    rho_e[np.ix_(flipped, flipped)] += 0.5 * same

    w = np.eye(1, dtype=complex)
    for _ in range(n):
        w = np.kron(w, _E_BASIS)
    change = np.kron(w, w.conj())
    return change @ rho_e @ change.conj().T


def _weingarten(n: int, d: int) -> np.ndarray:
    wg = {sigma: float(value) for sigma, value in weingarten_matrix(n, d).items()}
    perms = permutations(n)
    operators = {sigma: permutation_operator(sigma, d) for sigma in perms}
    side = d ** n
    out = np.zeros((side * side, side * side))
    for sigma in perms:
        right = sum(wg[compose(sigma, inverse(tau))] * operators[tau] for tau in perms)
        out += np.kron(operators[sigma], right)
    return out.astype(complex)


def performance_operator_exact(group: GroupSpec, n: int, allow_large: bool = False) -> PerformanceOperator:
    """
    Exactly integrated performance operator.

    Args:
        group: Group to average over
        n: Number of parallel queries
        allow_large: Permit Weingarten assembly up to n = 6 beyond the configured default

    Returns:
        PerformanceOperator of side d^{2n}

    Raises:
        SizeGuardError: d^{2n} beyond the limit of the integration path
    """
    if n < 0:
        raise ValueError(f"number of queries must be nonnegative, got {n}")
    d = group.d
    side = d ** (2 * n)

    if group.family is GroupFamily.UNITARY_FULL:
        if side > WEINGARTEN_MAX_SIDE:
            raise SizeGuardError(f"Weingarten path needs d^(2n) <= {WEINGARTEN_MAX_SIDE}, got {side}")
        limit = config.compute.weingarten_hard_limit if allow_large else config.compute.weingarten_max_n
        if n > limit:
            raise SizeGuardError(f"Weingarten assembly limited to n <= {limit}, got n={n}")
        if n > config.compute.weingarten_max_n:
            logger.warning(f"Weingarten assembly beyond the default limit: n={n}, {n}!^2 permutation pairs")
        matrix, method = _weingarten(n, d), IntegrationMethod.WEINGARTEN
    else:
        if side > config.compute.max_side:
            raise SizeGuardError(f"exact integration needs d^(2n) <= {config.compute.max_side}, got {side}")
        if group.family is GroupFamily.TRIVIAL:
            matrix, method = _exact_trivial(n, d), IntegrationMethod.EXACT_TRIVIAL
        elif group.family is GroupFamily.TORUS:
            matrix, method = _exact_torus(n, d), IntegrationMethod.EXACT_TORUS
        else:
            matrix, method = _exact_o2(n), IntegrationMethod.EXACT_O2

    logger.debug(f"Exact performance operator for {group}, n={n} via {method.value}")
    return PerformanceOperator(op=HermitianOperator.symmetrized(matrix), method=method, n=n, d=d)


def _choi_samples(group: GroupSpec, n: int, count: int, stream: RngStream) -> np.ndarray:
    """Rows are the Choi vectors |g^{⊗n}⟩⟩ of count sampled elements"""
    return batched_tensor_power(haar_samples(group, count, stream), n).reshape(count, -1)


def _check_mc_request(group: GroupSpec, n: int, shots: int) -> None:
    if shots < MIN_SHOTS:
        raise ValueError(f"Monte Carlo needs at least {MIN_SHOTS} shots, got {shots}")
    side = group.d ** (2 * n)
    if side > config.compute.max_side:
        raise SizeGuardError(f"Monte Carlo operator side {side} exceeds {config.compute.max_side}")


def _max_entry_stderr(first: np.ndarray, second: np.ndarray, shots: int) -> float:
    variance = np.clip(second - np.abs(first) ** 2, 0.0, None)
    return float(np.sqrt(variance.max() / shots))


def performance_operator_mc(
    group: GroupSpec,
    n: int,
    shots: int,
    rng: RngStream,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> PerformanceOperator:
    """
    Monte Carlo estimate of the performance operator with a max-entry standard error.

    Args:
        group: Group to sample
        n: Number of parallel queries
        shots: Number of i.i.d. samples (>= 100)
        rng: Parent random stream
        threads: Worker cap (defaults to SYMTEST_THREADS)
        chunk_size: Shots per chunk (defaults to SYMTEST_CHUNK_SIZE)
    """
    _check_mc_request(group, n, shots)

    def accumulate(count: int, stream: RngStream):
        vecs = _choi_samples(group, n, count, stream)
        power = np.abs(vecs) ** 2
        return vecs.T @ vecs.conj(), power.T @ power

    partials = map_chunks(accumulate, shots, rng, threads=threads, chunk_size=chunk_size)
    first = sum(p[0] for p in partials) / shots
    second = sum(p[1] for p in partials) / shots

    stderr = _max_entry_stderr(first, second, shots)
    logger.info(f"Monte Carlo performance operator for {group}, n={n}: {shots} shots, stderr {stderr:.3e}")
    return PerformanceOperator(
        op=HermitianOperator.symmetrized(first),
        method=IntegrationMethod.MONTE_CARLO,
        n=n,
        d=group.d,
        stderr=stderr,
    )


def performance_operator_mc_replicates(
    group: GroupSpec,
    n: int,
    shots: int,
    rng: RngStream,
    batches: Optional[int] = None,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> Tuple[PerformanceOperator, List[HermitianOperator]]:
    """
    Monte Carlo operator together with its delete-one-batch jackknife replicates.

    Sample j of every chunk belongs to batch j mod batches. Replicate b averages all
    shots outside batch b. The full estimate draws the same samples as
    performance_operator_mc for equal (rng, shots, chunk_size).

    Args:
        group: Group to sample
        n: Number of parallel queries
        shots: Number of i.i.d. samples (>= 100 and >= 2 * batches)
        rng: Parent random stream
        batches: Jackknife batch count (defaults to SYMTEST_JACKKNIFE_BATCHES)
        threads: Worker cap (defaults to SYMTEST_THREADS)
        chunk_size: Shots per chunk (defaults to SYMTEST_CHUNK_SIZE)

    Returns:
        (full estimate, list of `batches` replicate operators)
    """
    _check_mc_request(group, n, shots)
    batches = batches or config.montecarlo.jackknife_batches
    if batches < 2 or shots < 2 * batches:
        raise ValueError(f"jackknife needs 2 <= batches <= shots / 2, got {batches} batches for {shots} shots")

    def accumulate(count: int, stream: RngStream):
        vecs = _choi_samples(group, n, count, stream)
        sums = np.stack([vecs[b::batches].T @ vecs[b::batches].conj() for b in range(batches)])
        counts = np.array([len(vecs[b::batches]) for b in range(batches)])
        power = np.abs(vecs) ** 2
        return sums, counts, power.T @ power

    partials = map_chunks(accumulate, shots, rng, threads=threads, chunk_size=chunk_size)
    sums = sum(p[0] for p in partials)
    counts = sum(p[1] for p in partials)
    total = sums.sum(axis=0)
    first = total / shots
    second = sum(p[2] for p in partials) / shots

    stderr = _max_entry_stderr(first, second, shots)
    full = PerformanceOperator(
        op=HermitianOperator.symmetrized(first),
        method=IntegrationMethod.MONTE_CARLO,
        n=n,
        d=group.d,
        stderr=stderr,
    )
    replicates = [
        HermitianOperator.symmetrized((total - sums[b]) / (shots - counts[b])) for b in range(batches)
    ]
    logger.info(f"Monte Carlo jackknife for {group}, n={n}: {shots} shots in {batches} batches")
    return full, replicates
