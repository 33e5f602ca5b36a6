"""
Haar samplers for the supported groups
"""

import logging
from typing import Union

import numpy as np

from .groups import GroupFamily, GroupSpec
from .rng import RngStream

logger = logging.getLogger(__name__)

RandomSource = Union[RngStream, np.random.Generator]

REFLECTION = np.diag([1.0, -1.0]).astype(complex)


def _generator(source: RandomSource) -> np.random.Generator:
    return source.generator() if isinstance(source, RngStream) else source


def rotations(theta: np.ndarray) -> np.ndarray:
    """Batch of real rotations R(θ) = exp(-iθσ_y)"""
    c, s = np.cos(theta), np.sin(theta)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0], out[..., 0, 1] = c, -s
    out[..., 1, 0], out[..., 1, 1] = s, c
    return out


def haar_samples(group: GroupSpec, count: int, source: RandomSource) -> np.ndarray:
    """
    Draw `count` Haar-distributed elements of `group`.

    Args:
        group: Group to sample
        count: Number of samples
        source: RngStream or an already-open generator

    Returns:
        Array of shape (count, d, d)
    """
    rng = _generator(source)
    d = group.d

    if group.family is GroupFamily.UNITARY_FULL:
        ginibre = (rng.standard_normal((count, d, d)) + 1j * rng.standard_normal((count, d, d))) / np.sqrt(2)
        q, r = np.linalg.qr(ginibre)
        # QR is unique only up to phases; fix diag(R) > 0 to get the Haar measure
        diagonal = np.diagonal(r, axis1=-2, axis2=-1)
        return q * (diagonal / np.abs(diagonal))[:, None, :]

    if group.family is GroupFamily.TORUS:
        phases = np.exp(2j * np.pi * rng.random((count, d)))
        out = np.zeros((count, d, d), dtype=complex)
        out[:, np.arange(d), np.arange(d)] = phases
        return out

    if group.family is GroupFamily.ORTHOGONAL2:
        theta = 2 * np.pi * rng.random(count)
        reflect = rng.random(count) < 0.5
        out = rotations(theta)
        out[reflect] = out[reflect] @ REFLECTION
        return out

    return np.broadcast_to(np.eye(d, dtype=complex), (count, d, d)).copy()


def haar_sample(group: GroupSpec, rng: RandomSource) -> np.ndarray:
    """Single Haar-random element as a d x d unitary"""
    return haar_samples(group, 1, rng)[0]


def batched_tensor_power(unitaries: np.ndarray, n: int) -> np.ndarray:
    """U^{⊗n} for a batch of shape (count, d, d)"""
    count, d, _ = unitaries.shape
    out = np.ones((count, 1, 1), dtype=complex)
    for _ in range(n):
        side = out.shape[1]
        out = np.einsum("bij,bkl->bikjl", out, unitaries).reshape(count, side * d, side * d)
    return out
