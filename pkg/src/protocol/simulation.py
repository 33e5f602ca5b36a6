"""
Monte Carlo simulation of a parallel protocol

Acceptance of a query unitary U is ‖A (U^{⊗n} ⊗ I) ψ‖² with T0 = A†A. Type-I error
is sampled over G0 (plus the identity and deterministic extremal elements), type-II
error over Haar-random U(2).
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from config.config import config
from src.errors import InconsistencyError
from src.group_integrals import (
    GroupFamily,
    GroupSpec,
    RngStream,
    batched_tensor_power,
    haar_samples,
    map_chunks,
    rotations,
)
from src.matrix_core import hermitian_eig
from .optimal import ParallelProtocol

logger = logging.getLogger(__name__)

MIN_SHOTS = 100
PROBABILITY_TOL = 1e-9
NULL_STREAM = 0
ALT_STREAM = 1


class SimulationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    subgroup: str
    n: int
    target_beta: float
    type_i_worst: float
    type_i_mean: float
    type_ii_mean: float
    type_ii_stderr: float
    null_shots: int
    alt_shots: int
    seed: int
    stream: int

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


class _AcceptanceKernel:
    def __init__(self, protocol: ParallelProtocol):
        eigenvalues, eigenvectors = hermitian_eig(protocol.tester)
        keep = eigenvalues > PROBABILITY_TOL
        # rows of `factor` are sqrt(e_i) <v_i|
        self.factor = np.sqrt(eigenvalues[keep])[:, None] * eigenvectors[:, keep].conj().T
        self.psi = protocol.input_state.amplitudes.reshape(2 ** protocol.n, protocol.reference_dim)
        self.n = protocol.n

    def __call__(self, unitaries: np.ndarray) -> np.ndarray:
        powers = batched_tensor_power(unitaries, self.n)
        states = (powers @ self.psi).reshape(len(unitaries), -1)
        return np.sum(np.abs(states @ self.factor.T) ** 2, axis=1)


def extremal_elements(group: GroupSpec, angles: Optional[int] = None) -> np.ndarray:
    """Identity plus deterministic elements at evenly spaced angles"""
    count = angles or config.protocol.extremal_angles
    theta = 2 * np.pi * np.arange(count) / count
    elements: List[np.ndarray] = [np.eye(2, dtype=complex)[None]]
    if group.family is GroupFamily.ORTHOGONAL2:
        rot = rotations(theta)
        elements += [rot, rot @ np.diag([1.0, -1.0])]
    elif group.family is GroupFamily.TORUS:
        phases = np.exp(1j * theta)
        first = np.zeros((count, 2, 2), dtype=complex)
        first[:, 0, 0], first[:, 1, 1] = phases, 1.0
        second = np.zeros((count, 2, 2), dtype=complex)
        second[:, 0, 0], second[:, 1, 1] = 1.0, phases
        elements += [first, second]
    return np.concatenate(elements)


def _check_probabilities(values: np.ndarray, what: str) -> None:
    if values.size and (values.min() < -PROBABILITY_TOL or values.max() > 1 + PROBABILITY_TOL):
        raise InconsistencyError(f"{what} acceptance outside [0, 1]: [{values.min():.3e}, {values.max():.3e}]")


def simulate(
    protocol: ParallelProtocol,
    null_shots: Optional[int] = None,
    alt_shots: Optional[int] = None,
    rng: Optional[RngStream] = None,
    threads: Optional[int] = None,
) -> SimulationReport:
    """
    Estimate type-I and type-II errors of a protocol.

    Args:
        protocol: Protocol to simulate
        null_shots: Samples g ~ μ0 (>= 100)
        alt_shots: Samples U ~ Haar(U(2)) (>= 100)
        rng: Parent stream; null samples use substream 0, alternative samples substream 1
        threads: Worker cap (defaults to SYMTEST_THREADS)

    Returns:
        SimulationReport
    """
    null_shots = null_shots or config.protocol.null_shots
    alt_shots = alt_shots or config.protocol.alt_shots
    if min(null_shots, alt_shots) < MIN_SHOTS:
        raise ValueError(f"simulation needs at least {MIN_SHOTS} shots per hypothesis")
    rng = rng or RngStream(config.montecarlo.seed)
    kernel = _AcceptanceKernel(protocol)
    null_group = GroupSpec.for_subgroup(protocol.subgroup)
    alternative = GroupSpec.unitary_full(2)

    def null_chunk(count: int, stream: RngStream):
        acc = kernel(haar_samples(null_group, count, stream))
        _check_probabilities(acc, "null")
        return float(np.max(1 - acc)), float(np.sum(1 - acc))

    def alt_chunk(count: int, stream: RngStream):
        acc = kernel(haar_samples(alternative, count, stream))
        _check_probabilities(acc, "alternative")
        return float(np.sum(acc)), float(np.sum(acc ** 2))

    null_parts = map_chunks(null_chunk, null_shots, rng.substream(NULL_STREAM), threads=threads)
    alt_parts = map_chunks(alt_chunk, alt_shots, rng.substream(ALT_STREAM), threads=threads)

    fixed = 1 - kernel(extremal_elements(null_group))
    type_i_worst = max(max(p[0] for p in null_parts), float(np.max(fixed)))
    type_i_mean = sum(p[1] for p in null_parts) / null_shots

    mean = sum(p[0] for p in alt_parts) / alt_shots
    second = sum(p[1] for p in alt_parts) / alt_shots
    stderr = float(np.sqrt(max(second - mean ** 2, 0.0) / alt_shots))

    report = SimulationReport(
        subgroup=protocol.subgroup.kind.value,
        n=protocol.n,
        target_beta=float(protocol.target_beta),
        type_i_worst=max(type_i_worst, 0.0),
        type_i_mean=type_i_mean,
        type_ii_mean=mean,
        type_ii_stderr=stderr,
        null_shots=null_shots,
        alt_shots=alt_shots,
        seed=rng.seed,
        stream=rng.stream,
    )
    logger.info(
        f"Simulated {report.subgroup} n={report.n}: type-I worst {report.type_i_worst:.2e}, "
        f"type-II {report.type_ii_mean:.6f} ± {report.type_ii_stderr:.1e} (target {report.target_beta:.6f})"
    )
    return report
