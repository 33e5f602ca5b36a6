"""
Optimal type-II error and max-relative entropy between performance operators
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

import numpy as np

from src.group_integrals import GroupSpec, performance_operator_exact
from src.matrix_core import dmax_numeric
from src.rep_core import SubgroupLike, as_subgroup, branching_table, theorem2_value

logger = logging.getLogger(__name__)

Number = Union[int, float, str, Fraction]


class BetaMethod(Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


def as_fraction(value: Number) -> Fraction:
    """Exact rational from user input; floats go through their shortest repr so 0.1 is 1/10"""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class ErrorBudget:
    """Type-I tolerance ε"""
    epsilon: Fraction = Fraction(0)

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        if not 0 <= eps <= 1:
            raise ValueError(f"type-I tolerance must lie in [0, 1], got {eps}")
        object.__setattr__(self, "epsilon", eps)

    @classmethod
    def of(cls, eps: Union["ErrorBudget", Number]) -> "ErrorBudget":
        return eps if isinstance(eps, ErrorBudget) else cls(as_fraction(eps))


def dmax_analytic(subgroup: SubgroupLike, n: int) -> Fraction:
    """Exact e^{D_max(ρ_μ0 || ρ_μ)} from the branching table"""
    return theorem2_value(branching_table(subgroup, n)).exp_dmax


def dmax_numeric_exact(subgroup: SubgroupLike, n: int, allow_large: bool = False) -> float:
    """D_max(ρ_μ0 || ρ_μ) (natural log) between exactly integrated performance operators"""
    group = as_subgroup(subgroup)
    null = performance_operator_exact(GroupSpec.for_subgroup(group), n)
    alternative = performance_operator_exact(GroupSpec.unitary_full(group.d), n, allow_large=allow_large)
    return dmax_numeric(null.op, alternative.op)


def beta_optimal(
    subgroup: SubgroupLike,
    n: int,
    eps: Union[ErrorBudget, Number] = 0,
    method: BetaMethod = BetaMethod.ANALYTIC,
    allow_large: bool = False,
) -> Union[Fraction, float]:
    """
    Optimal type-II error (1 - ε) e^{-D_max(ρ_μ0 || ρ_μ)}.

    Args:
        subgroup: Symmetry subgroup G0
        n: Number of queries
        eps: Type-I tolerance
        method: ANALYTIC (exact rational) or NUMERIC (dense D_max, 4^n <= 4096)
        allow_large: Let the Weingarten path go past the configured n limit

    Returns:
        Fraction for ANALYTIC, float for NUMERIC
    """
    if n < 0:
        raise ValueError(f"number of queries must be nonnegative, got {n}")
    budget = ErrorBudget.of(eps)
    if method is BetaMethod.ANALYTIC:
        return (1 - budget.epsilon) * theorem2_value(branching_table(subgroup, n)).beta0
    dmax = dmax_numeric_exact(subgroup, n, allow_large=allow_large)
    return float(1 - budget.epsilon) * float(np.exp(-dmax))


def design_blindness(subgroup: SubgroupLike, n: int) -> bool:
    """True when n queries cannot tell G0 from the full unitary group at all (e^{D_max} = 1)"""
    return dmax_analytic(subgroup, n) == 1
