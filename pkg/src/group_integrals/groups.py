"""
Compact groups integrated over by the performance operators
"""

from dataclasses import dataclass
from enum import Enum

from src.errors import UnsupportedDimensionError
from src.rep_core import SubgroupKind, SubgroupLike, as_subgroup


class GroupFamily(Enum):
    UNITARY_FULL = "unitary"
    TORUS = "torus"
    ORTHOGONAL2 = "orthogonal2"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class GroupSpec:
    """A concrete matrix group acting on C^d"""
    family: GroupFamily
    d: int = 2

    def __post_init__(self):
        if self.family is GroupFamily.UNITARY_FULL and self.d < 2:
            raise UnsupportedDimensionError(f"UnitaryFull needs d >= 2, got {self.d}")
        if self.family is GroupFamily.ORTHOGONAL2 and self.d != 2:
            raise UnsupportedDimensionError(f"Orthogonal2 acts on C^2 only, got d={self.d}")
        if self.d < 1:
            raise UnsupportedDimensionError(f"dimension must be positive, got {self.d}")

    @classmethod
    def unitary_full(cls, d: int = 2) -> "GroupSpec":
        return cls(GroupFamily.UNITARY_FULL, d)

    @classmethod
    def torus(cls, d: int = 2) -> "GroupSpec":
        return cls(GroupFamily.TORUS, d)

    @classmethod
    def orthogonal2(cls) -> "GroupSpec":
        return cls(GroupFamily.ORTHOGONAL2, 2)

    @classmethod
    def trivial(cls, d: int = 2) -> "GroupSpec":
        return cls(GroupFamily.TRIVIAL, d)

    @classmethod
    def for_subgroup(cls, subgroup: SubgroupLike) -> "GroupSpec":
        """Matrix group realising a symmetry subgroup G0 ⊂ U(d)"""
        group = as_subgroup(subgroup)
        if group.kind is SubgroupKind.TRIVIAL:
            return cls.trivial(group.d)
        if group.kind is SubgroupKind.TORUS:
            return cls.torus(group.d)
        return cls(GroupFamily.ORTHOGONAL2, group.d)

    def __str__(self) -> str:
        if self.family is GroupFamily.ORTHOGONAL2:
            return "O(2)"
        if self.family is GroupFamily.TORUS:
            return f"U(1)^{self.d}"
        if self.family is GroupFamily.TRIVIAL:
            return f"{{e}} in U({self.d})"
        return f"U({self.d})"
