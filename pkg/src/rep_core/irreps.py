"""
Irreducible representations of U(d) in tensor powers of the defining representation
Exact integer combinatorics: qubit Schur-Weyl multiplicities, Young diagrams, Weyl dimensions
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

from src.errors import InvalidDiagramError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """
    Two-row Young diagram labelling a U(2) irrep inside the n-fold tensor power.

    Spins are carried as the integer twoJ = row1 - row2 so all arithmetic stays exact;
    row2 is the power of the determinant.
    """
    row1: int
    row2: int

    def __post_init__(self):
        if self.row2 < 0 or self.row1 < self.row2:
            raise InvalidDiagramError(f"({self.row1}, {self.row2}) is not a two-row Young diagram")

    @classmethod
    def from_two_j(cls, n: int, two_j: int) -> "IrrepLabel":
        if two_j < 0 or two_j > n or (n - two_j) % 2:
            raise InvalidDiagramError(f"twoJ={two_j} does not occur in the {n}-fold tensor power")
        row2 = (n - two_j) // 2
        return cls(row1=n - row2, row2=row2)

    @property
    def n(self) -> int:
        return self.row1 + self.row2

    @property
    def two_j(self) -> int:
        return self.row1 - self.row2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def to_dict(self) -> Dict[str, int]:
        return {"row1": self.row1, "row2": self.row2}

    def __str__(self) -> str:
        return f"[{self.row1},{self.row2}]"


@dataclass(frozen=True)
class IrrepComponent:
    """One summand of a tensor-power decomposition: label, dimension d_λ, multiplicity n_λ"""
    label: IrrepLabel
    dim: int
    mult: int

    def __iter__(self):
        return iter((self.label, self.dim, self.mult))

    def to_dict(self) -> Dict[str, int]:
        return {**self.label.to_dict(), "dim": self.dim, "mult": self.mult}


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@lru_cache(maxsize=None)
def u2_irrep_decomposition(n: int) -> Tuple[IrrepComponent, ...]:
    """
    Decompose (C^2)^{⊗n} under U^{⊗n}.

    Args:
        n: Tensor power (n >= 0)

    Returns:
        Components ordered by increasing twoJ; Σ d_λ n_λ = 2^n
    """
    if n < 0:
        raise ValueError(f"tensor power must be nonnegative, got {n}")

    components = []
    for two_j in range(n % 2, n + 1, 2):
        k = (n - two_j) // 2
        mult = _binom(n, k) - _binom(n, k - 1)
        components.append(IrrepComponent(IrrepLabel.from_two_j(n, two_j), two_j + 1, mult))

    assert sum(c.dim * c.mult for c in components) == 2 ** n
    return tuple(components)


def sum_dim_squared(n: int, d: int = 2) -> int:
    """
    Σ_λ d_λ² over the U(d) irreps λ ∈ Y_n^d of the n-fold tensor power.

    The qubit case sums the Schur-Weyl decomposition; other depths sum Weyl
    dimensions over young_diagrams(n, d).
    """
    if d == 2:
        return sum(c.dim ** 2 for c in u2_irrep_decomposition(n))
    if d < 1:
        raise ValueError(f"depth must be positive, got d={d}")
    return sum(weyl_dimension(diagram, d) ** 2 for diagram in young_diagrams(n, d))


def sum_dim_squared_closed_form(n: int) -> Fraction:
    """(m+1)(2m+1)(2m+3)/3 for n = 2m and 2m(m+1)(2m+1)/3 for n = 2m-1"""
    if n % 2 == 0:
        m = n // 2
        return Fraction((m + 1) * (2 * m + 1) * (2 * m + 3), 3)
    m = (n + 1) // 2
    return Fraction(2 * m * (m + 1) * (2 * m + 1), 3)


def young_diagrams(n: int, d: int) -> List[Tuple[int, ...]]:
    """
    Enumerate Young diagrams with n boxes and at most d rows.

    Args:
        n: Number of boxes (n >= 0)
        d: Depth (d >= 1)

    Returns:
        Non-increasing nonnegative d-vectors summing to n, in descending lexicographic order
    """
    if n < 0 or d < 1:
        raise ValueError(f"need n >= 0 and d >= 1, got n={n}, d={d}")

    diagrams: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], remaining: int, cap: int) -> None:
        rows_left = d - len(prefix)
        if rows_left == 0:
            if remaining == 0:
                diagrams.append(tuple(prefix))
            return
        # the remaining rows can hold at most cap * rows_left boxes
        for row in range(min(cap, remaining), -1, -1):
            if row * rows_left < remaining:
                break
            extend(prefix + [row], remaining - row, row)

    extend([], n, n)
    return diagrams


def validate_diagram(diagram: Sequence[int], d: int) -> Tuple[int, ...]:
    """Pad a diagram to length d and check it is non-increasing and nonnegative"""
    rows = [int(r) for r in diagram]
    if len(rows) > d:
        if any(rows[d:]):
            raise InvalidDiagramError(f"diagram {tuple(rows)} has more than {d} nonzero rows")
        rows = rows[:d]
    rows += [0] * (d - len(rows))
    if any(r < 0 for r in rows) or any(rows[i] < rows[i + 1] for i in range(d - 1)):
        raise InvalidDiagramError(f"diagram {tuple(rows)} is not non-increasing and nonnegative")
    return tuple(rows)


def weyl_dimension(diagram: Sequence[int], d: int) -> int:
    """
    Dimension of the U(d) irrep with highest weight `diagram`.

    Uses the product formula ∏_{i<j} (j - i + λ_i - λ_j) / (j - i) in exact rationals.
    """
    rows = validate_diagram(diagram, d)
    dimension = Fraction(1)
    for i in range(d):
        for j in range(i + 1, d):
            dimension *= Fraction(j - i + rows[i] - rows[j], j - i)
    if dimension.denominator != 1:
        raise InvalidDiagramError(f"non-integral Weyl dimension {dimension} for {rows}")
    return int(dimension)
