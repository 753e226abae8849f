"""Topological types of real curves, their partitions and real Jacobian components."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Union


@dataclass(frozen=True)
class CurveType:
    """Topological type (g, mu, eps) of a smooth compact real algebraic curve."""

    g: int
    mu: int
    eps: int

    @property
    def is_valid(self) -> bool:
        return is_valid_curve_type(self.g, self.mu, self.eps)

    def __str__(self) -> str:
        return f"({self.g},{self.mu},{self.eps})"


def is_valid_curve_type(g: int, mu: int, eps: int) -> bool:
    """Return True when (g, mu, eps) is the type of some real curve."""

    if g < 0 or eps not in (0, 1):
        return False
    if eps == 0:
        return 0 <= mu <= g
    return 1 <= mu <= g + 1 and (mu - g - 1) % 2 == 0


def require_valid_curve_type(ct: CurveType) -> None:
    if not ct.is_valid:
        raise ValueError(f"Invalid curve type {ct}")


@dataclass(frozen=True)
class Partition:
    """Unordered split of the real components {1..mu} in two, stored by the side holding 1."""

    mu: int
    side: frozenset[int]

    def __post_init__(self) -> None:
        if self.mu < 1:
            raise ValueError(f"Partitions need at least one real component, got mu={self.mu}")
        if not self.side <= frozenset(range(1, self.mu + 1)):
            raise ValueError(f"Partition side {sorted(self.side)} is not contained in 1..{self.mu}")
        if 1 not in self.side:
            raise ValueError(f"Partition side {sorted(self.side)} is not canonical (must contain 1)")

    @classmethod
    def from_side(cls, mu: int, side: set[int] | frozenset[int]) -> Partition:
        """Build the canonical partition represented by either of its two sides."""

        side = frozenset(side)
        if mu >= 1 and 1 not in side:
            side = frozenset(range(1, mu + 1)) - side
        return cls(mu, side)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.mu + 1)) - self.side

    def sorted_side(self) -> list[int]:
        return sorted(self.side)


class JacFlag(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class PartitionComponent:
    """Real Jacobian component indexed by a partition of the real components."""

    partition: Partition


@dataclass(frozen=True)
class EmptyRealPart:
    """Real Jacobian component of a curve without real points."""

    flag: JacFlag


JacComponent = Union[PartitionComponent, EmptyRealPart]


def count_partitions(mu: int) -> int:
    """Number of two-element partitions of mu real components."""

    if mu <= 0:
        raise ValueError(f"count_partitions needs mu >= 1, got {mu}")
    return 2 ** (mu - 1)


def canonical_partitions(mu: int) -> list[Partition]:
    """All canonical partitions of {1..mu}, by side size then lexicographically."""

    if mu <= 0:
        raise ValueError(f"canonical_partitions needs mu >= 1, got {mu}")
    others = range(2, mu + 1)
    result: list[Partition] = []
    for size in range(0, mu):
        for extra in combinations(others, size):
            result.append(Partition(mu, frozenset((1, *extra))))
    return result


def jac_real_component_count(ct: CurveType) -> int:
    """Number of connected components of the real part of the Jacobian."""

    require_valid_curve_type(ct)
    if ct.mu > 0:
        return 2 ** (ct.mu - 1)
    return 1 if ct.g % 2 == 0 else 2


def component_of_partition(ct: CurveType, p: Partition) -> PartitionComponent:
    """Map a canonical partition to the Jacobian component it labels."""

    require_valid_curve_type(ct)
    if ct.mu == 0:
        raise ValueError("Curves without real points have no partition model")
    if p.mu != ct.mu:
        raise ValueError(f"Partition over {p.mu} components does not match mu={ct.mu}")
    return PartitionComponent(p)


def empty_real_part(ct: CurveType, flag: JacFlag) -> EmptyRealPart:
    """Checked constructor for components of curves with empty real part."""

    require_valid_curve_type(ct)
    if ct.mu != 0:
        raise ValueError(f"Curve type {ct} has real points; use a partition component")
    if flag is JacFlag.NONTRIVIAL and ct.g % 2 == 0:
        raise ValueError(f"The real Jacobian is connected for even genus, g={ct.g}")
    return EmptyRealPart(flag)


def trivial_component(ct: CurveType) -> JacComponent:
    """Jacobian component containing the trivial bundle."""

    require_valid_curve_type(ct)
    if ct.mu == 0:
        return EmptyRealPart(JacFlag.TRIVIAL)
    return PartitionComponent(Partition(ct.mu, frozenset(range(1, ct.mu + 1))))


def is_trivial_component(ct: CurveType, component: JacComponent) -> bool:
    return component == trivial_component(ct)


def component_matches(ct: CurveType, component: JacComponent) -> tuple[bool, str]:
    """Check that a Jacobian component belongs to curves of type ct."""

    if isinstance(component, PartitionComponent):
        if ct.mu == 0:
            return False, "partition component on a curve without real points"
        if component.partition.mu != ct.mu:
            return False, f"partition over {component.partition.mu} components, curve has mu={ct.mu}"
        return True, ""
    if ct.mu != 0:
        return False, "empty-real-part component on a curve with real points"
    if component.flag is JacFlag.NONTRIVIAL and ct.g % 2 == 0:
        return False, "nontrivial component requires odd genus"
    return True, ""


def curves_deformation_equivalent(a: CurveType, b: CurveType) -> bool:
    """Real curves are deformation equivalent iff their topological types agree."""

    require_valid_curve_type(a)
    require_valid_curve_type(b)
    return (a.g, a.mu, a.eps) == (b.g, b.mu, b.eps)
