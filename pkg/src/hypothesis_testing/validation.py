"""
Cross-validation of the analytic optimum against dense D_max
"""

import logging
from enum import Enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config.config import config
from src.errors import SizeGuardError
from src.group_integrals import GroupSpec, RngStream, performance_operator_exact, performance_operator_mc_replicates
from src.matrix_core import HermitianOperator, dmax_numeric
from src.rep_core import SubgroupLike, as_subgroup
from .beta import ErrorBudget, Number, beta_optimal, dmax_numeric_exact

logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-8
MIN_MC_SHOTS = 10_000
MAX_SIDE = 4096
MC_MAX_SIDE = 256  # batches x side^2 entries per chunk


class ValidationMode(Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


class CrossValidationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    subgroup: str
    n: int
    eps: float
    analytic: float
    analytic_exact: str
    numeric: float
    discrepancy: float
    tolerance: float
    method: str
    stderr: Optional[float] = None
    shots: Optional[int] = None
    seed: Optional[int] = None
    passed: bool = Field(alias="pass")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def jackknife_stderr(leave_out: np.ndarray) -> float:
    """Delete-one jackknife standard error from the leave-one-batch-out estimates"""
    batches = len(leave_out)
    if batches < 2:
        raise ValueError(f"jackknife needs at least 2 replicates, got {batches}")
    spread = np.sum((leave_out - leave_out.mean()) ** 2)
    return float(np.sqrt((batches - 1) / batches * spread))


def _beta_against(null: HermitianOperator, alternative: HermitianOperator) -> float:
    return float(np.exp(-dmax_numeric(null, alternative, rtol=config.montecarlo.support_rtol)))


def cross_validate(
    subgroup: SubgroupLike,
    n: int,
    mode: ValidationMode = ValidationMode.EXACT,
    shots: Optional[int] = None,
    rng: Optional[RngStream] = None,
    eps: Union[ErrorBudget, Number] = 0,
) -> CrossValidationReport:
    """
    Compare the analytic β with the one obtained from dense performance operators.

    Exact mode integrates both operators exactly and passes within 1e-8. Monte Carlo
    mode samples ρ_μ, estimates the standard error of the numeric β by a delete-one-batch
    jackknife and passes within sigma_multiplier standard errors.

    Args:
        subgroup: Symmetry subgroup G0
        n: Number of queries (4^n <= 4096; Monte Carlo 4^n <= 256)
        mode: EXACT or MONTE_CARLO
        shots: Monte Carlo shots (>= 10^4)
        rng: Monte Carlo stream (defaults to SYMTEST_SEED, stream 0)
        eps: Type-I tolerance applied to both sides
    """
    group = as_subgroup(subgroup)
    side = group.d ** (2 * n)
    if side > MAX_SIDE:
        raise SizeGuardError(f"cross-validation needs d^(2n) <= {MAX_SIDE}, got {side}")
    budget = ErrorBudget.of(eps)
    analytic = beta_optimal(group, n, budget)

    stderr = None
    if mode is ValidationMode.EXACT:
        numeric = float(1 - budget.epsilon) * float(np.exp(-dmax_numeric_exact(group, n)))
        tolerance = EXACT_TOLERANCE
    else:
        shots = shots or config.montecarlo.shots
        if shots < MIN_MC_SHOTS:
            raise ValueError(f"Monte Carlo cross-validation needs at least {MIN_MC_SHOTS} shots, got {shots}")
        if side > MC_MAX_SIDE:
            raise SizeGuardError(f"Monte Carlo cross-validation needs d^(2n) <= {MC_MAX_SIDE}, got {side}")
        rng = rng or RngStream(config.montecarlo.seed)
        null = performance_operator_exact(GroupSpec.for_subgroup(group), n)
        alternative, replicates = performance_operator_mc_replicates(GroupSpec.unitary_full(group.d), n, shots, rng)
        scale = float(1 - budget.epsilon)
        numeric = scale * _beta_against(null.op, alternative.op)
        leave_out = np.array([scale * _beta_against(null.op, replicate) for replicate in replicates])
        stderr = jackknife_stderr(leave_out)
        tolerance = config.montecarlo.sigma_multiplier * stderr

    discrepancy = abs(float(analytic) - numeric)
    report = CrossValidationReport(
        subgroup=group.kind.value,
        n=n,
        eps=float(budget.epsilon),
        analytic=float(analytic),
        analytic_exact=str(analytic),
        numeric=numeric,
        discrepancy=discrepancy,
        tolerance=tolerance,
        method=mode.value,
        stderr=stderr,
        shots=shots if mode is ValidationMode.MONTE_CARLO else None,
        seed=rng.seed if mode is ValidationMode.MONTE_CARLO else None,
        passed=bool(discrepancy <= tolerance),
    )
    logger.info(
        f"cross-validation {group.kind.name} n={n} ({mode.value}): |Δβ|={discrepancy:.3e}, pass={report.passed}"
    )
    return report
