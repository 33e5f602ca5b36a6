"""
Hypothesis Testing
Optimal type-II error, sample complexity and numeric cross-checks
"""

from .beta import (
    BetaMethod,
    ErrorBudget,
    as_fraction,
    beta_optimal,
    design_blindness,
    dmax_analytic,
    dmax_numeric_exact,
)
from .complexity import (
    SampleComplexityResult,
    default_delta_grid,
    growth_exponent,
    sample_complexity,
    scaling_fit,
)
from .validation import CrossValidationReport, ValidationMode, cross_validate, jackknife_stderr

__all__ = [
    "BetaMethod",
    "ErrorBudget",
    "as_fraction",
    "beta_optimal",
    "design_blindness",
    "dmax_analytic",
    "dmax_numeric_exact",
    "SampleComplexityResult",
    "default_delta_grid",
    "growth_exponent",
    "sample_complexity",
    "scaling_fit",
    "CrossValidationReport",
    "ValidationMode",
    "cross_validate",
    "jackknife_stderr",
]
