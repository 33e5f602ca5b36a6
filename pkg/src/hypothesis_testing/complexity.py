"""
Sample complexity and scaling exponents
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from config.config import config
from src.errors import InconsistencyError, RangeError
from src.rep_core import SubgroupLike, as_subgroup, branching_table, closed_form_beta0, sum_dim_squared, theorem2_value
from .beta import Number, as_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleComplexityResult:
    delta: Fraction
    n_star: int
    beta_at_n_star: Fraction

    def to_dict(self):
        return {"delta": str(self.delta), "n_star": self.n_star, "beta": str(self.beta_at_n_star)}


def sample_complexity(subgroup: SubgroupLike, delta: Number, use_tables: bool = False) -> SampleComplexityResult:
    """
    Smallest number of queries whose optimal type-II error is at most delta.

    β(n) is non-increasing in n for every supported subgroup, so the closed form
    is bisected over [0, n_max_search].

    Args:
        subgroup: Symmetry subgroup G0
        delta: Target type-II error in (0, 1]
        use_tables: Re-check the answer against branching tables at n* and n* - 1

    Raises:
        RangeError: delta below β at the search ceiling
    """
    target = as_fraction(delta)
    if not 0 < target <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {target}")
    group = as_subgroup(subgroup)
    ceiling = config.analysis.n_max_search

    if closed_form_beta0(group, ceiling) > target:
        raise RangeError(f"delta={target} is below β(n={ceiling}) = {float(closed_form_beta0(group, ceiling)):.3e}")

    lo, hi = 0, ceiling
    while lo < hi:
        mid = (lo + hi) // 2
        if closed_form_beta0(group, mid) <= target:
            hi = mid
        else:
            lo = mid + 1
    result = SampleComplexityResult(delta=target, n_star=lo, beta_at_n_star=closed_form_beta0(group, lo))

    if use_tables:
        for n in {max(lo - 1, 0), lo}:
            from_table = theorem2_value(branching_table(group, n)).beta0
            if from_table != closed_form_beta0(group, n):
                raise InconsistencyError(f"branching table gives β({n}) = {from_table}, closed form disagrees")

    logger.debug(f"{group.kind.name}: n*={result.n_star} for delta={target}")
    return result


def default_delta_grid() -> np.ndarray:
    hi, lo = config.analysis.delta_grid_range
    return np.geomspace(hi, lo, config.analysis.delta_grid_points)


def scaling_fit(subgroup: SubgroupLike, delta_grid: Optional[Sequence[float]] = None) -> float:
    """
    Least-squares slope of log n*(δ) against log(1/δ).

    Args:
        subgroup: Symmetry subgroup G0
        delta_grid: At least 4 strictly decreasing values in (0, 1e-2]
    """
    grid = default_delta_grid() if delta_grid is None else np.asarray(delta_grid, dtype=float)
    if grid.size < 4:
        raise ValueError(f"scaling fit needs at least 4 grid points, got {grid.size}")
    if np.any(grid <= 0) or np.any(grid > 1e-2) or np.any(np.diff(grid) >= 0):
        raise ValueError("delta grid must be strictly decreasing inside (0, 1e-2]")

    n_star = np.array([sample_complexity(subgroup, float(delta)).n_star for delta in grid], dtype=float)
    slope, _ = np.polyfit(np.log(1.0 / grid), np.log(n_star), 1)
    return float(slope)


def growth_exponent(n_range: Optional[Tuple[int, int]] = None, d: int = 2) -> float:
    """
    Slope of log Σ_λ d_λ² against log n over n_range (inclusive).

    The identity-testing e^{D_max} grows as n^{d²-1}, so the slope approaches d² - 1 from below.
    """
    lo, hi = n_range or config.analysis.growth_range
    if lo < 1 or hi <= lo:
        raise ValueError(f"need 1 <= lo < hi, got ({lo}, {hi})")
    ns = np.arange(lo, hi + 1)
    sums = np.array([float(sum_dim_squared(int(n), d)) for n in ns])
    slope, _ = np.polyfit(np.log(ns), np.log(sums), 1)
    logger.debug(f"growth exponent d={d} over [{lo}, {hi}]: {slope:.4f}")
    return float(slope)
