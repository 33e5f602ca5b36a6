"""
Protocol
Qubit Schur basis, optimal parallel testers and their simulation
"""

from .schur import SchurBasis, SchurBlock, cg_half, check_leakage, performance_operator_blocks, schur_basis
from .optimal import (
    ParallelProtocol,
    accept_all_protocol,
    build_optimal_protocol,
    build_protocol,
    idle_extension,
    isotypic_vectors,
)
from .simulation import SimulationReport, extremal_elements, simulate

__all__ = [
    "SchurBasis",
    "SchurBlock",
    "cg_half",
    "check_leakage",
    "performance_operator_blocks",
    "schur_basis",
    "ParallelProtocol",
    "accept_all_protocol",
    "build_optimal_protocol",
    "build_protocol",
    "idle_extension",
    "isotypic_vectors",
    "SimulationReport",
    "extremal_elements",
    "simulate",
]
