"""
Representation Core
Exact irreps, branching rules and the optimal type-II error value
"""

from .irreps import (
    IrrepComponent,
    IrrepLabel,
    sum_dim_squared,
    sum_dim_squared_closed_form,
    u2_irrep_decomposition,
    weyl_dimension,
    young_diagrams,
)
from .branching import (
    BranchingTable,
    O2OneDim,
    O2TwoDim,
    Subgroup,
    SubgroupIrrepLabel,
    SubgroupKind,
    SubgroupLike,
    TorusWeight,
    TrivialRep,
    as_subgroup,
    branching_oracle,
    branching_table,
    eta_from_dict,
)
from .theorem import (
    BetaResult,
    ancilla_free_condition,
    closed_form_beta0,
    eta_value,
    eta_values,
    identity_beta0,
    reference_free_beta,
    theorem2_value,
)

__all__ = [
    "IrrepComponent",
    "IrrepLabel",
    "sum_dim_squared",
    "sum_dim_squared_closed_form",
    "u2_irrep_decomposition",
    "weyl_dimension",
    "young_diagrams",
    "BranchingTable",
    "O2OneDim",
    "O2TwoDim",
    "Subgroup",
    "SubgroupIrrepLabel",
    "SubgroupKind",
    "SubgroupLike",
    "TorusWeight",
    "TrivialRep",
    "as_subgroup",
    "branching_oracle",
    "branching_table",
    "eta_from_dict",
    "BetaResult",
    "ancilla_free_condition",
    "closed_form_beta0",
    "eta_value",
    "eta_values",
    "identity_beta0",
    "reference_free_beta",
    "theorem2_value",
]
