"""
Optimal type-II error from branching data
e^{D_max(ρ_μ0 || ρ_μ)} = max_η d_{η,G0}^{-1} Σ_λ d_λ n_{η,λ}, in exact rationals
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

from src.errors import UnsupportedDimensionError
from .irreps import sum_dim_squared
from .branching import (
    BranchingTable,
    SubgroupIrrepLabel,
    SubgroupKind,
    SubgroupLike,
    as_subgroup,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BetaResult:
    """Optimal zero-tolerance type-II error and the subgroup irrep that attains it"""
    beta0: Fraction
    exp_dmax: Fraction
    argmax_eta: SubgroupIrrepLabel
    ancilla_free: bool

    def __post_init__(self):
        assert 0 < self.beta0 <= 1 and self.beta0 * self.exp_dmax == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "beta0": str(self.beta0),
            "exp_dmax": str(self.exp_dmax),
            "argmax_eta": self.argmax_eta.to_dict(),
            "ancilla_free": self.ancilla_free,
        }


def eta_value(table: BranchingTable, eta: SubgroupIrrepLabel, reference_free_only: bool = False) -> Fraction:
    """
    d_{η,G0}^{-1} Σ_λ d_λ n_{η,λ}.

    With reference_free_only the sum runs over λ with d_{η,G0} n_{η,λ} <= n_λ only,
    the value reachable without a reference system.
    """
    total = 0
    for comp in table.lambdas:
        mult = table.multiplicity(eta, comp.label)
        if mult == 0:
            continue
        if reference_free_only and eta.dim * mult > comp.mult:
            continue
        total += comp.dim * mult
    return Fraction(total, eta.dim)


def eta_values(table: BranchingTable) -> Dict[SubgroupIrrepLabel, Fraction]:
    return {eta: eta_value(table, eta) for eta in table.etas()}


def ancilla_free_condition(table: BranchingTable, eta: SubgroupIrrepLabel) -> bool:
    """True iff d_{η,G0} n_{η,λ} <= n_λ for every λ containing η"""
    table.require_eta(eta)
    return all(
        eta.dim * table.multiplicity(eta, comp.label) <= comp.mult
        for comp in table.lambdas
        if table.multiplicity(eta, comp.label) > 0
    )


def _argmax(values: Dict[SubgroupIrrepLabel, Fraction]) -> SubgroupIrrepLabel:
    best = max(values.values())
    # etas() is already in canonical order; first hit is the smallest label
    return next(eta for eta, value in values.items() if value == best)


def theorem2_value(table: BranchingTable) -> BetaResult:
    """
    Evaluate the optimal type-II error at zero tolerance.

    Args:
        table: Branching table for G0 and the tensor power

    Returns:
        BetaResult with beta0 = 1 / e^{D_max}
    """
    values = eta_values(table)
    if not values:
        raise ValueError("branching table is empty")
    eta = _argmax(values)
    exp_dmax = values[eta]
    result = BetaResult(
        beta0=1 / exp_dmax,
        exp_dmax=exp_dmax,
        argmax_eta=eta,
        ancilla_free=ancilla_free_condition(table, eta),
    )
    logger.debug(f"{table.subgroup.kind.name} n={table.n}: e^Dmax={exp_dmax} at {eta}")
    return result


def reference_free_beta(table: BranchingTable) -> BetaResult:
    """
    Best type-II error of the invariant protocol restricted to λ satisfying the
    ancilla-free inequality, so that no reference system is needed.
    """
    values = {eta: eta_value(table, eta, reference_free_only=True) for eta in table.etas()}
    values = {eta: value for eta, value in values.items() if value > 0}
    if not values:
        # no admissible λ: only the accept-all tester remains
        return BetaResult(beta0=Fraction(1), exp_dmax=Fraction(1), argmax_eta=table.etas()[0], ancilla_free=True)
    eta = _argmax(values)
    return BetaResult(beta0=1 / values[eta], exp_dmax=values[eta], argmax_eta=eta, ancilla_free=True)


def closed_form_beta0(subgroup: SubgroupLike, n: int) -> Fraction:
    """
    Closed-form optimal type-II error for qubit identity, Z-symmetry and T-symmetry testing.

    Args:
        subgroup: Subgroup (d must be 2)
        n: Number of queries (n >= 0; n = 0 gives 1)

    Returns:
        Exact rational β(0)
    """
    group = as_subgroup(subgroup)
    if group.d != 2:
        raise UnsupportedDimensionError(f"closed forms are only known for d=2 (got d={group.d})")
    if n < 0:
        raise ValueError(f"number of queries must be nonnegative, got {n}")

    if group.kind is SubgroupKind.TRIVIAL:
        return Fraction(6, (n + 1) * (n + 2) * (n + 3))
    if group.kind is SubgroupKind.TORUS:
        if n % 2 == 0:
            return Fraction(4, (n + 2) ** 2)
        return Fraction(4, (n + 1) * (n + 3))
    if n % 2 == 0:
        return Fraction(8, (n + 2) * (n + 4))
    return Fraction(8, (n + 1) * (n + 3))


def identity_beta0(n: int, d: int = 2) -> Fraction:
    """
    Optimal zero-tolerance type-II error for testing the identity of U(d) with n queries.

    Trivial-group branching gives n_{η,λ} = d_λ, so e^{D_max} = Σ_{λ∈Y_n^d} d_λ².
    At d = 2 this equals closed_form_beta0(Trivial, n).
    """
    if n < 0:
        raise ValueError(f"number of queries must be nonnegative, got {n}")
    return Fraction(1, sum_dim_squared(n, d))
