"""
Weingarten calculus for Haar moments of U(d)

Wg(σ, d) = (1/n!²) Σ_{λ ⊢ n, ℓ(λ) <= d} χ_λ(e)² χ_λ(σ) / dim_d(λ)

Characters come from the Murnaghan–Nakayama rule on beta-sets. Restricting to
ℓ(λ) <= d gives the pseudo-inverse of the Gram matrix d^{#cycles(στ⁻¹)} when d < n.
"""

import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from src.errors import SizeGuardError
from src.rep_core import weyl_dimension, young_diagrams

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

WEINGARTEN_HARD_LIMIT = 6


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """(σ∘τ)(i) = σ(τ(i))"""
    return tuple(sigma[t] for t in tau)


def inverse(sigma: Permutation) -> Permutation:
    out = [0] * len(sigma)
    for i, s in enumerate(sigma):
        out[s] = i
    return tuple(out)


def cycle_type(sigma: Permutation) -> Tuple[int, ...]:
    seen = [False] * len(sigma)
    lengths: List[int] = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = sigma[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def permutations(n: int) -> List[Permutation]:
    return list(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _mn_character(beta: Tuple[int, ...], cycles: Tuple[int, ...]) -> int:
    # Murnaghan–Nakayama: strip a rim hook of length cycles[0] by lowering one bead
    if not cycles:
        return 1
    length, rest = cycles[0], cycles[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - length
        if target < 0 or target in beads:
            continue
        sign = -1 if sum(1 for c in beta if target < c < b) % 2 else 1
        lowered = tuple(sorted((beads - {b}) | {target}, reverse=True))
        total += sign * _mn_character(lowered, rest)
    return total


def symmetric_character(partition: Tuple[int, ...], cycles: Tuple[int, ...]) -> int:
    """Irreducible S_n character χ_partition at an element of the given cycle type"""
    rows = [r for r in partition if r > 0]
    k = len(rows)
    beta = tuple(r + k - 1 - i for i, r in enumerate(rows))
    return _mn_character(beta, tuple(sorted(cycles, reverse=True)))


@lru_cache(maxsize=None)
def _weingarten_by_class(n: int, d: int) -> Dict[Tuple[int, ...], Fraction]:
    depth = max(1, min(d, n))
    diagrams = [tuple(r for r in diagram if r > 0) for diagram in young_diagrams(n, depth)]
    identity_class = (1,) * n
    classes = {cycle_type(sigma) for sigma in permutations(n)}
    factorial_sq = Fraction(1, math.factorial(n) ** 2)

    values = {}
    for cls in classes:
        total = Fraction(0)
        for diagram in diagrams:
            degree = symmetric_character(diagram, identity_class)
            total += Fraction(degree ** 2 * symmetric_character(diagram, cls), weyl_dimension(diagram, d))
        values[cls] = total * factorial_sq
    return values


def weingarten_matrix(n: int, d: int) -> Dict[Permutation, Fraction]:
    """
    Exact Weingarten function on S_n for U(d).

    Args:
        n: Moment order (0 <= n <= 6)
        d: Unitary dimension

    Returns:
        Map from permutation (as an image tuple) to Wg(σ, d)
    """
    if n > WEINGARTEN_HARD_LIMIT:
        raise SizeGuardError(f"Weingarten function limited to n <= {WEINGARTEN_HARD_LIMIT}, got n={n}")
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n}, d={d}")
    by_class = _weingarten_by_class(n, d)
    return {sigma: by_class[cycle_type(sigma)] for sigma in permutations(n)}


def gram_matrix(n: int, d: int) -> np.ndarray:
    """G_{σ,τ} = d^{#cycles(στ⁻¹)} over permutations(n) in lexicographic order"""
    perms = permutations(n)
    return np.array(
        [[d ** len(cycle_type(compose(s, inverse(t)))) for t in perms] for s in perms],
        dtype=float,
    )


def permutation_operator(sigma: Permutation, d: int) -> np.ndarray:
    """P_σ on (C^d)^{⊗n}: P_σ |i_0 … i_{n-1}⟩ = |i_{σ⁻¹(0)} … i_{σ⁻¹(n-1)}⟩"""
    n = len(sigma)
    side = d ** n
    if n == 0:
        return np.eye(1)
    digits = np.array(np.unravel_index(np.arange(side), (d,) * n))
    rows = np.ravel_multi_index(tuple(digits[list(inverse(sigma))]), (d,) * n)
    out = np.zeros((side, side))
    out[rows, np.arange(side)] = 1.0
    return out
