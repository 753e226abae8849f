"""Line-bundle classes over a real curve and their behaviour under the real structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .curve import (
    CurveType,
    JacComponent,
    PartitionComponent,
    component_matches,
    require_valid_curve_type,
    trivial_component,
)


class Relation(str, Enum):
    """How c_B* acts on the class of L."""

    REAL = "real"
    ANTIREAL = "antireal"
    BOTH = "both"
    TRIVIAL = "trivial"
    NONE = "none"


DEGREE_ZERO_RELATIONS = frozenset({Relation.ANTIREAL, Relation.BOTH, Relation.TRIVIAL})
LIFTABLE_RELATIONS = frozenset({Relation.REAL, Relation.BOTH, Relation.TRIVIAL})


@dataclass(frozen=True)
class BundleClass:
    """Class of a line bundle L together with its relation to c_B*."""

    degree: int
    relation: Relation
    obstruction: int | None = None
    jac_component: JacComponent | None = None

    def __post_init__(self) -> None:
        if self.relation in DEGREE_ZERO_RELATIONS and self.degree != 0:
            raise ValueError(f"Relation {self.relation.value} forces degree 0, got {self.degree}")
        if self.obstruction not in (None, 1, -1):
            raise ValueError(f"Obstruction must be +1, -1 or null, got {self.obstruction}")
        if self.obstruction is not None and self.relation not in (Relation.REAL, Relation.BOTH):
            raise ValueError(f"Obstruction sign is meaningless for relation {self.relation.value}")
        needs_component = self.degree == 0 and self.relation in DEGREE_ZERO_RELATIONS
        if needs_component and self.jac_component is None:
            raise ValueError(f"Relation {self.relation.value} requires a Jacobian component")
        if not needs_component and self.jac_component is not None:
            raise ValueError(f"Relation {self.relation.value} carries no Jacobian component")


def is_consistent(b: BundleClass, ct: CurveType) -> tuple[bool, str]:
    """Check a bundle class against the curve type it lives over."""

    if not ct.is_valid:
        return False, f"invalid curve type {ct}"
    if b.jac_component is not None:
        ok, reason = component_matches(ct, b.jac_component)
        if not ok:
            return False, reason
    if b.relation is Relation.TRIVIAL and b.jac_component != trivial_component(ct):
        return False, "the trivial bundle lies in the trivial Jacobian component"
    if ct.mu > 0 and b.obstruction == -1:
        return False, "the real-lift obstruction is +1 whenever the curve has real points"
    if ct.mu == 0 and b.relation in (Relation.REAL, Relation.BOTH) and b.obstruction is None:
        return False, "an obstruction sign is required when the curve has no real points"
    return True, ""


def require_consistent(b: BundleClass, ct: CurveType) -> None:
    ok, reason = is_consistent(b, ct)
    if not ok:
        raise ValueError(f"Inconsistent bundle: {reason}")


def real_lift_exists(b: BundleClass, ct: CurveType) -> bool:
    """Return True when c_B lifts to a real structure on L."""

    require_consistent(b, ct)
    sign = 1 if b.obstruction is None else b.obstruction
    return b.relation in LIFTABLE_RELATIONS and sign == 1


def real_structure_exists_on_P(b: BundleClass, ct: CurveType) -> bool:
    """Return True when P(L + L0) carries a real structure fibered over c_B."""

    return real_lift_exists(b, ct) or b.relation in DEGREE_ZERO_RELATIONS


def partition_of(b: BundleClass) -> PartitionComponent | None:
    if isinstance(b.jac_component, PartitionComponent):
        return b.jac_component
    return None


class Orbit(str, Enum):
    REAL = "real"
    PAIR = "pair"


@dataclass(frozen=True)
class PointLabel:
    """Abstract point of the curve: a real point on a component, or one half of a conjugate pair."""

    name: str
    orbit: Orbit
    component: int | None = None
    mate: str | None = None

    def __post_init__(self) -> None:
        if self.orbit is Orbit.REAL and (self.component is None or self.mate is not None):
            raise ValueError(f"Real point {self.name} needs a component and no mate")
        if self.orbit is Orbit.PAIR and (self.mate is None or self.component is not None):
            raise ValueError(f"Paired point {self.name} needs a mate and no component")
        if self.mate == self.name:
            raise ValueError(f"Point {self.name} cannot be its own conjugate")


@dataclass(frozen=True)
class DivisorSymbol:
    """Formal integer combination of declared point labels."""

    labels: frozenset[PointLabel]
    terms: tuple[tuple[str, int], ...] = ()
    _by_name: dict[str, PointLabel] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        by_name = {label.name: label for label in self.labels}
        if len(by_name) != len(self.labels):
            raise ValueError("Duplicate point label names")
        for label in self.labels:
            if label.orbit is Orbit.PAIR:
                mate = by_name.get(label.mate or "")
                if mate is None or mate.mate != label.name:
                    raise ValueError(f"Point {label.name} has no matching conjugate {label.mate}")
        for name, _ in self.terms:
            if name not in by_name:
                raise ValueError(f"Unknown point label {name}")
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def build(cls, labels: Iterable[PointLabel], coefficients: Mapping[str, int] | None = None) -> DivisorSymbol:
        """Create a divisor, dropping zero coefficients and sorting terms."""

        terms = tuple(sorted((n, c) for n, c in (coefficients or {}).items() if c != 0))
        return cls(frozenset(labels), terms)

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.terms)

    def coefficient(self, name: str) -> int:
        return dict(self.terms).get(name, 0)

    def label(self, name: str) -> PointLabel:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"Unknown point label {name}") from None

    def _combine(self, other: DivisorSymbol, sign: int) -> DivisorSymbol:
        labels = self.labels | other.labels
        coeffs = dict(self.terms)
        for name, c in other.terms:
            coeffs[name] = coeffs.get(name, 0) + sign * c
        return DivisorSymbol.build(labels, coeffs)

    def __add__(self, other: DivisorSymbol) -> DivisorSymbol:
        return self._combine(other, 1)

    def __sub__(self, other: DivisorSymbol) -> DivisorSymbol:
        return self._combine(other, -1)

    def __neg__(self) -> DivisorSymbol:
        return DivisorSymbol.build(self.labels, {n: -c for n, c in self.terms})

    def conjugate(self) -> DivisorSymbol:
        """Image under c_B: real labels are fixed and paired labels swap."""

        coeffs: dict[str, int] = {}
        for name, c in self.terms:
            label = self._by_name[name]
            target = label.mate if label.orbit is Orbit.PAIR else name
            coeffs[target] = coeffs.get(target, 0) + c
        return DivisorSymbol.build(self.labels, coeffs)

    def is_invariant(self) -> bool:
        return self.conjugate() == self

    def positive_part(self) -> DivisorSymbol:
        return DivisorSymbol.build(self.labels, {n: c for n, c in self.terms if c > 0})

    def negative_part(self) -> DivisorSymbol:
        return DivisorSymbol.build(self.labels, {n: -c for n, c in self.terms if c < 0})

    def real_terms(self) -> list[tuple[PointLabel, int]]:
        return [(self._by_name[n], c) for n, c in self.terms if self._by_name[n].orbit is Orbit.REAL]


def twist_by_point(d: DivisorSymbol, x: str) -> DivisorSymbol:
    """Return D + x for a declared point label x."""

    d.label(x)
    return d + DivisorSymbol.build(d.labels, {x: 1})


def check_divisor_over(d: DivisorSymbol, ct: CurveType) -> tuple[bool, str]:
    """Check that real labels sit on existing real components of the curve."""

    require_valid_curve_type(ct)
    for label in d.labels:
        if label.orbit is Orbit.REAL and not 1 <= (label.component or 0) <= ct.mu:
            return False, f"real point {label.name} on component {label.component}, curve has mu={ct.mu}"
    return True, ""
