"""
Branching rules from U(2) irreps to the symmetry subgroups
Trivial group (identity test), diagonal torus (Z-symmetry) and O(2) (T-symmetry)
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Mapping, Tuple, Union

import numpy as np

from src.errors import InconsistencyError, UnknownIrrepError, UnsupportedDimensionError
from .irreps import IrrepComponent, IrrepLabel, u2_irrep_decomposition

logger = logging.getLogger(__name__)


class SubgroupKind(Enum):
    TRIVIAL = "identity"
    TORUS = "z"
    ORTHOGONAL = "t"

    @classmethod
    def from_cli(cls, name: str) -> "SubgroupKind":
        return cls(name.lower())


@dataclass(frozen=True)
class Subgroup:
    """Symmetry subgroup G0 of U(d)"""
    kind: SubgroupKind
    d: int = 2

    def __post_init__(self):
        if self.d < 2:
            raise UnsupportedDimensionError(f"ambient dimension must be >= 2, got {self.d}")

    def require_qubit(self) -> None:
        if self.d != 2:
            raise UnsupportedDimensionError(
                f"branching for {self.kind.name} is only implemented for d=2 (got d={self.d})"
            )


SubgroupLike = Union[Subgroup, SubgroupKind]


def as_subgroup(subgroup: SubgroupLike) -> Subgroup:
    return subgroup if isinstance(subgroup, Subgroup) else Subgroup(subgroup)


# Subgroup irrep labels. sort_key gives the canonical order used for tie-breaking:
# TrivialRep < TorusWeight (lexicographic) < O2OneDim(+1) < O2OneDim(-1) < O2TwoDim (ascending w)

@dataclass(frozen=True)
class TrivialRep:
    dim: int = field(default=1, init=False)

    @property
    def sort_key(self) -> Tuple:
        return (0,)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "trivial"}

    def __str__(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class TorusWeight:
    weight: Tuple[int, ...]
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(w) for w in self.weight))
        if any(w < 0 for w in self.weight):
            raise ValueError(f"torus weight entries must be nonnegative: {self.weight}")

    @property
    def sort_key(self) -> Tuple:
        return (1, self.weight)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "torus_weight", "weight": list(self.weight)}

    def __str__(self) -> str:
        return "torus(" + ",".join(str(w) for w in self.weight) + ")"


@dataclass(frozen=True)
class O2OneDim:
    parity: int
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        if self.parity not in (1, -1):
            raise ValueError(f"O(2) one-dimensional irrep parity must be +1 or -1, got {self.parity}")

    @property
    def sort_key(self) -> Tuple:
        return (2, 0 if self.parity == 1 else 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "o2_one_dim", "parity": self.parity}

    def __str__(self) -> str:
        return f"o2_1d({'+' if self.parity == 1 else '-'}1)"


@dataclass(frozen=True)
class O2TwoDim:
    w: int
    dim: int = field(default=2, init=False)

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError(f"O(2) two-dimensional irrep needs a positive weight, got {self.w}")

    @property
    def sort_key(self) -> Tuple:
        return (3, self.w)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "o2_two_dim", "w": self.w}

    def __str__(self) -> str:
        return f"o2_2d({self.w})"


SubgroupIrrepLabel = Union[TrivialRep, TorusWeight, O2OneDim, O2TwoDim]


def eta_from_dict(data: Mapping[str, Any]) -> SubgroupIrrepLabel:
    kind = data["kind"]
    if kind == "trivial":
        return TrivialRep()
    if kind == "torus_weight":
        return TorusWeight(tuple(data["weight"]))
    if kind == "o2_one_dim":
        return O2OneDim(int(data["parity"]))
    if kind == "o2_two_dim":
        return O2TwoDim(int(data["w"]))
    raise UnknownIrrepError(f"unknown subgroup irrep kind {kind!r}")


@dataclass(frozen=True)
class BranchingTable:
    """
    Restriction data (η, λ) → n_{η,λ} for one subgroup and tensor power.
    Pairs absent from `entries` have multiplicity zero.
    """
    n: int
    subgroup: Subgroup
    lambdas: Tuple[IrrepComponent, ...]
    entries: Mapping[Tuple[SubgroupIrrepLabel, IrrepLabel], int]

    def etas(self) -> List[SubgroupIrrepLabel]:
        return sorted({eta for eta, _ in self.entries}, key=lambda eta: eta.sort_key)

    def multiplicity(self, eta: SubgroupIrrepLabel, label: IrrepLabel) -> int:
        return self.entries.get((eta, label), 0)

    def component(self, label: IrrepLabel) -> IrrepComponent:
        for comp in self.lambdas:
            if comp.label == label:
                return comp
        raise UnknownIrrepError(f"{label} does not occur in the {self.n}-fold tensor power")

    def require_eta(self, eta: SubgroupIrrepLabel) -> None:
        if not any(key[0] == eta for key in self.entries):
            raise UnknownIrrepError(f"{eta} does not occur in the {self.subgroup.kind.name} table for n={self.n}")

    def restriction_dim(self, label: IrrepLabel) -> int:
        """Σ_η d_{η,G0} n_{η,λ}; equals d_λ for a complete table"""
        return sum(eta.dim * mult for (eta, lam), mult in self.entries.items() if lam == label)

    def check_completeness(self) -> None:
        for comp in self.lambdas:
            restricted = self.restriction_dim(comp.label)
            if restricted != comp.dim:
                raise InconsistencyError(
                    f"restriction of {comp.label} to {self.subgroup.kind.name} "
                    f"has dimension {restricted}, expected {comp.dim}"
                )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "subgroup": self.subgroup.kind.value,
            "lambdas": [comp.to_dict() for comp in self.lambdas],
            "entries": [
                {"eta": eta.to_dict(), "lambda": lam.to_dict(), "mult": mult}
                for (eta, lam), mult in sorted(
                    self.entries.items(), key=lambda item: (item[0][0].sort_key, item[0][1].two_j)
                )
            ],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def branching_table(subgroup: SubgroupLike, n: int) -> BranchingTable:
    """
    Build the branching table for G0 ⊂ U(2) on the n-fold tensor power.

    Args:
        subgroup: Subgroup (ambient dimension must be 2)
        n: Tensor power (n >= 0)

    Returns:
        BranchingTable with every nonzero n_{η,λ}
    """
    group = as_subgroup(subgroup)
    group.require_qubit()
    if n < 0:
        raise ValueError(f"tensor power must be nonnegative, got {n}")

    lambdas = u2_irrep_decomposition(n)
    entries: Dict[Tuple[SubgroupIrrepLabel, IrrepLabel], int] = {}

    if group.kind is SubgroupKind.TRIVIAL:
        for comp in lambdas:
            entries[(TrivialRep(), comp.label)] = comp.dim

    elif group.kind is SubgroupKind.TORUS:
        # weight (a, n-a) is the Z-eigenvalue 2a - n; present in λ iff |2a - n| <= twoJ
        for a in range(n, -1, -1):
            for comp in lambdas:
                if abs(2 * a - n) <= comp.label.two_j:
                    entries[(TorusWeight((a, n - a)), comp.label)] = 1

    elif group.kind is SubgroupKind.ORTHOGONAL:
        for comp in lambdas:
            two_j = comp.label.two_j
            for w in range(2 - n % 2, two_j + 1, 2):
                entries[(O2TwoDim(w), comp.label)] = 1
            if n % 2 == 0:
                # the zero-weight line carries det^{row2}: parity (-1)^{n/2 - twoJ/2}
                parity = 1 if (n // 2 - two_j // 2) % 2 == 0 else -1
                entries[(O2OneDim(parity), comp.label)] = 1

    table = BranchingTable(n=n, subgroup=group, lambdas=lambdas, entries=entries)
    table.check_completeness()
    logger.debug(f"Built {group.kind.name} branching table for n={n}: {len(entries)} nonzero entries")
    return table


def _u2_character(label: IrrepLabel, eigenvalues: np.ndarray) -> complex:
    """Schur polynomial s_{(row1,row2)}(x1, x2) = (x1 x2)^{row2} h_{twoJ}(x1, x2)"""
    x1, x2 = eigenvalues
    complete = sum(x1 ** a * x2 ** (label.two_j - a) for a in range(label.two_j + 1))
    return (x1 * x2) ** label.row2 * complete


def _rotation(theta: float) -> np.ndarray:
    return np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])


_REFLECTION = np.diag([1.0, -1.0])


def _subgroup_quadrature(group: Subgroup, eta: SubgroupIrrepLabel, points: int):
    """Yield (weight, group element, conj χ_η) over a quadrature rule exact for degree < points"""
    if group.kind is SubgroupKind.TRIVIAL:
        yield 1.0, np.eye(group.d), 1.0
        return

    angles = 2 * np.pi * np.arange(points) / points

    if group.kind is SubgroupKind.TORUS:
        weight = np.asarray(eta.weight)
        for phi1 in angles:
            for phi2 in angles:
                phases = np.array([phi1, phi2])
                element = np.diag(np.exp(1j * phases))
                yield 1.0 / points ** 2, element, np.exp(-1j * np.dot(weight, phases))
        return

    for theta in angles:
        rotation = _rotation(theta)
        if isinstance(eta, O2TwoDim):
            rot_char, refl_char = 2 * np.cos(eta.w * theta), 0.0
        else:
            rot_char, refl_char = 1.0, float(eta.parity)
        yield 0.5 / points, rotation, rot_char
        yield 0.5 / points, rotation @ _REFLECTION, refl_char


def branching_oracle(
    subgroup: SubgroupLike,
    eta: SubgroupIrrepLabel,
    label: IrrepLabel,
    n: int,
    quadrature_points: int,
) -> float:
    """
    Numerical multiplicity ∫_{G0} χ_λ(g) conj(χ_η(g)) dg by quadrature.

    Characters of λ are evaluated from the eigenvalues of concrete 2x2 group elements,
    independently of the combinatorial rules in branching_table.

    Raises:
        InconsistencyError: result is not within 1e-8 of an integer
    """
    group = as_subgroup(subgroup)
    group.require_qubit()
    if label.n != n:
        raise ValueError(f"{label} does not belong to the {n}-fold tensor power")
    if group.kind is not SubgroupKind.TRIVIAL and quadrature_points < 4 * (n + 1):
        raise ValueError(f"need at least {4 * (n + 1)} quadrature points for n={n}, got {quadrature_points}")

    total = 0j
    for weight, element, eta_conj in _subgroup_quadrature(group, eta, quadrature_points):
        eigenvalues = np.linalg.eigvals(element)
        total += weight * _u2_character(label, eigenvalues) * eta_conj

    if abs(total.imag) > 1e-8 or abs(total.real - round(total.real)) > 1e-8:
        raise InconsistencyError(
            f"non-integral multiplicity {total:.12g} for {eta} in {label} ({group.kind.name}, n={n})"
        )
    return float(total.real)
