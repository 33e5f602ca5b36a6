"""
Optimal invariant parallel protocol

For the chosen subgroup irrep η, vectors u_λ(a, c) span the η-isotypic part of each
U_λ (a indexes η, c the copies of η in λ). With weights p_λ ∝ d_λ n_{η,λ}:

    Φ_{a,b} = Σ_λ √(p_λ / n_{η,λ}) Σ_c u_λ(a, c) placed in slot (b, c)
    ψ       = d_η^{-1/2} Σ_a Φ_{a,a}
    T0      = Σ_{a,b} |Φ_{a,b}⟩⟨Φ_{a,b}|

A slot is a multiplicity copy of λ when d_η n_{η,λ} <= n_λ (no reference system),
otherwise copy 0 of λ paired with a reference basis vector.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

from config.config import config
from src.errors import NonPSDError, SizeGuardError
from src.group_integrals import GroupSpec, RngStream, haar_samples
from src.matrix_core import HermitianOperator, PureState, complex_to_pairs, hermitian_eig, tensor_power
from src.rep_core import (
    BranchingTable,
    IrrepComponent,
    O2OneDim,
    Subgroup,
    SubgroupIrrepLabel,
    SubgroupKind,
    SubgroupLike,
    TorusWeight,
    TrivialRep,
    ancilla_free_condition,
    as_subgroup,
    branching_table,
    eta_value,
    theorem2_value,
)
from .schur import SchurBasis, schur_basis

logger = logging.getLogger(__name__)

TESTER_TOL = 1e-10
EIGEN_TOL = 1e-8

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_REFLECTION = np.diag([1.0, -1.0])


@dataclass(frozen=True, eq=False)
class ParallelProtocol:
    """Input state on system ⊗ reference and a two-outcome tester T0 (accept)"""
    n: int
    subgroup: Subgroup
    eta: Optional[SubgroupIrrepLabel]
    input_state: PureState
    tester: HermitianOperator
    reference_dim: int
    reference_free: bool
    target_beta: Fraction
    weights: Dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.input_state.dim != 2 ** self.n * self.reference_dim:
            raise ValueError(f"state dimension {self.input_state.dim} != 2^{self.n} x {self.reference_dim}")
        if self.tester.side != self.input_state.dim:
            raise ValueError(f"tester side {self.tester.side} != state dimension {self.input_state.dim}")
        spectrum, _ = hermitian_eig(self.tester)
        if spectrum[0] < -TESTER_TOL or spectrum[-1] > 1 + TESTER_TOL:
            raise NonPSDError(f"tester spectrum [{spectrum[0]:.3e}, {spectrum[-1]:.3e}] leaves [0, 1]")

    def acceptance(self, unitary: np.ndarray) -> float:
        """⟨ψ|(U^{⊗n} ⊗ I)† T0 (U^{⊗n} ⊗ I)|ψ⟩ for a single 2x2 unitary"""
        psi = self.input_state.amplitudes.reshape(2 ** self.n, self.reference_dim)
        out = (tensor_power(unitary, self.n) @ psi).reshape(-1)
        return float(np.real(out.conj() @ self.tester.matrix @ out))

    def invariance_deviation(self, samples: int = 50, rng: Optional[RngStream] = None) -> float:
        """max ‖(g ⊗ I) T0 (g ⊗ I)† − T0‖_max over sampled g in G0"""
        rng = rng or RngStream(config.montecarlo.seed, 7)
        identity = np.eye(self.reference_dim)
        worst = 0.0
        for g in haar_samples(GroupSpec.for_subgroup(self.subgroup), samples, rng):
            lifted = np.kron(tensor_power(g, self.n), identity)
            moved = lifted @ self.tester.matrix @ lifted.conj().T
            worst = max(worst, float(np.max(np.abs(moved - self.tester.matrix))))
        return worst

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "subgroup": self.subgroup.kind.value,
            "eta": self.eta.to_dict() if self.eta is not None else None,
            "reference_free": self.reference_free,
            "reference_dim": self.reference_dim,
            "target_beta": str(self.target_beta),
            "weights": {label: str(p) for label, p in self.weights.items()},
            "input_state": complex_to_pairs(self.input_state.amplitudes),
            "tester": complex_to_pairs(self.tester.matrix),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _total_sigma_y(n: int) -> np.ndarray:
    total = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for t in range(n):
        total += np.kron(np.kron(np.eye(2 ** t), _SIGMA_Y), np.eye(2 ** (n - t - 1)))
    return total


def _eigenvector(generator: np.ndarray, value: int) -> np.ndarray:
    values, vectors = np.linalg.eigh(generator)
    index = int(np.argmin(np.abs(values - value)))
    if abs(values[index] - value) > EIGEN_TOL:
        raise ValueError(f"eigenvalue {value} absent from generator spectrum {np.round(values, 6)}")
    return vectors[:, index]


def isotypic_vectors(basis: SchurBasis, comp: IrrepComponent, eta: SubgroupIrrepLabel) -> np.ndarray:
    """
    Coordinates (in the |J, M⟩ basis of U_λ) of u_λ(a, c).

    Returns:
        Array of shape (d_η, n_{η,λ}, d_λ); the action of G0 on index a is the same for every λ
    """
    two_j = comp.label.two_j
    if isinstance(eta, TrivialRep):
        return np.eye(comp.dim, dtype=complex)[None, :, :]
    if isinstance(eta, TorusWeight):
        two_m = 2 * eta.weight[0] - basis.n
        coords = np.zeros(comp.dim, dtype=complex)
        coords[(two_j - two_m) // 2] = 1.0
        return coords[None, None, :]

    # O(2): rotations are exp(-iθσ_y), so weights are eigenvalues of Σσ_y
    generator = basis.irrep_matrix(comp.label, _total_sigma_y(basis.n))
    if isinstance(eta, O2OneDim):
        return _eigenvector(generator, 0)[None, None, :]
    plus = _eigenvector(generator, eta.w)
    flip = basis.irrep_matrix(comp.label, tensor_power(_REFLECTION, basis.n))
    return np.stack([plus, flip @ plus])[:, None, :]


def build_protocol(
    table: BranchingTable, eta: SubgroupIrrepLabel, reference_free_only: bool = False
) -> ParallelProtocol:
    """
    Invariant parallel protocol for a given subgroup irrep η.

    Args:
        table: Branching table of G0 on the n-fold tensor power (1 <= n <= 6)
        eta: Subgroup irrep the input state is built on
        reference_free_only: Drop λ violating d_η n_{η,λ} <= n_λ so no reference is needed

    Returns:
        ParallelProtocol with zero type-I error and type-II error 1 / value(η)
    """
    table.require_eta(eta)
    n = table.n
    basis = schur_basis(n)
    d_eta = eta.dim

    active = [
        comp for comp in table.lambdas
        if table.multiplicity(eta, comp.label) > 0
        and (not reference_free_only or d_eta * table.multiplicity(eta, comp.label) <= comp.mult)
    ]
    if not active:
        raise ValueError(f"no irrep of the {n}-fold tensor power admits {eta} without a reference system")
    reference_free = reference_free_only or ancilla_free_condition(table, eta)
    reference_dim = 1 if reference_free else 2 ** n
    if 2 ** n * reference_dim > config.protocol.max_state_dim:
        raise SizeGuardError(
            f"protocol state of dimension {2 ** n * reference_dim} exceeds {config.protocol.max_state_dim} "
            f"({table.subgroup.kind.name}, n={n}, reference_dim={reference_dim})"
        )

    total = sum(comp.dim * table.multiplicity(eta, comp.label) for comp in active)
    weights = {str(comp.label): Fraction(comp.dim * table.multiplicity(eta, comp.label), total) for comp in active}

    phis: Dict[tuple, np.ndarray] = {(a, b): np.zeros(2 ** n * reference_dim, dtype=complex)
                                     for a in range(d_eta) for b in range(d_eta)}
    for comp in active:
        mult = table.multiplicity(eta, comp.label)
        coords = isotypic_vectors(basis, comp, eta)
        copies = basis.copies(comp.label)
        scale = np.sqrt(float(weights[str(comp.label)]) / mult)
        for a in range(d_eta):
            for b in range(d_eta):
                for c in range(mult):
                    slot = b * mult + c
                    reference = np.zeros(reference_dim)
                    if reference_free:
                        system, reference[0] = copies[slot].embed(coords[a, c]), 1.0
                    else:
                        system, reference[slot] = copies[0].embed(coords[a, c]), 1.0
                    phis[(a, b)] += scale * np.kron(system, reference)

    psi = sum(phis[(a, a)] for a in range(d_eta)) / np.sqrt(d_eta)
    tester = sum(np.outer(phi, phi.conj()) for phi in phis.values())
    value = eta_value(table, eta, reference_free_only=reference_free_only)

    protocol = ParallelProtocol(
        n=n,
        subgroup=table.subgroup,
        eta=eta,
        input_state=PureState.normalized(psi),
        tester=HermitianOperator.symmetrized(tester),
        reference_dim=reference_dim,
        reference_free=reference_free,
        target_beta=1 / value,
        weights=weights,
    )
    logger.info(
        f"Built {table.subgroup.kind.name} protocol n={n} at {eta}: "
        f"reference_dim={reference_dim}, target β={protocol.target_beta}"
    )
    return protocol


def _trivial_protocol(subgroup: Subgroup) -> ParallelProtocol:
    """Zero queries: accept everything"""
    return ParallelProtocol(
        n=0,
        subgroup=subgroup,
        eta=None,
        input_state=PureState(np.ones(1)),
        tester=HermitianOperator.identity(1),
        reference_dim=1,
        reference_free=True,
        target_beta=Fraction(1),
    )


def idle_extension(protocol: ParallelProtocol) -> ParallelProtocol:
    """Add one unused query: the extra system qubit starts in |0⟩ and the tester ignores it"""
    if protocol.reference_dim != 1:
        raise ValueError("idle extension is only defined for reference-free protocols")
    psi = np.kron(protocol.input_state.amplitudes, np.array([1.0, 0.0]))
    tester = np.kron(protocol.tester.matrix, np.eye(2))
    return ParallelProtocol(
        n=protocol.n + 1,
        subgroup=protocol.subgroup,
        eta=protocol.eta,
        input_state=PureState(psi),
        tester=HermitianOperator.symmetrized(tester),
        reference_dim=1,
        reference_free=True,
        target_beta=protocol.target_beta,
        weights=dict(protocol.weights),
    )


def build_optimal_protocol(subgroup: SubgroupLike, n: int) -> ParallelProtocol:
    """
    Optimal parallel protocol for testing membership in G0 with n queries.

    T-symmetry at odd n reaches the same error as n - 1 queries, so it runs the
    reference-free (n - 1)-query protocol and leaves the last query idle.

    Args:
        subgroup: Symmetry subgroup G0 (qubit)
        n: Number of queries (1 <= n <= ProtocolConfig.max_n)
    """
    group = as_subgroup(subgroup)
    group.require_qubit()
    if not 1 <= n <= config.protocol.max_n:
        raise SizeGuardError(f"protocol construction supports 1 <= n <= {config.protocol.max_n}, got {n}")

    if group.kind is SubgroupKind.ORTHOGONAL and n % 2 == 1:
        base = build_optimal_protocol(group, n - 1) if n > 1 else _trivial_protocol(group)
        logger.info(f"T-symmetry n={n}: reusing the {n - 1}-query protocol with one idle query")
        return idle_extension(base)

    table = branching_table(group, n)
    return build_protocol(table, theorem2_value(table).argmax_eta)


def accept_all_protocol(subgroup: SubgroupLike, n: int) -> ParallelProtocol:
    """Tester T0 = I on n reference-free qubits"""
    group = as_subgroup(subgroup)
    state = np.zeros(2 ** n)
    state[0] = 1.0
    return ParallelProtocol(
        n=n,
        subgroup=group,
        eta=None,
        input_state=PureState(state),
        tester=HermitianOperator.identity(2 ** n),
        reference_dim=1,
        reference_free=True,
        target_beta=Fraction(1),
    )
