"""Real structures on decomposable ruled surfaces P(L + L0) lifting c_B."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .bundle import BundleClass, Relation, partition_of, real_lift_exists, require_consistent
from .config import DEFAULT_REWRITE_BUDGET
from .curve import CurveType
from .errors import WitnessValidationError
from .symbolic import DEFAULT_KINDS, ChartMap, GeneratorKind, Hypothesis, c_sign_map, verify_conjugation

logger = logging.getLogger(__name__)


class StructureTag(str, Enum):
    """c_L + c_L0, or c_{f_D} / c_{-f_D}."""

    DIRECT_SUM = "direct_sum"
    C_PLUS = "c_plus"
    C_MINUS = "c_minus"


class Conjugacy(str, Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not_conjugate"
    UNKNOWN = "unknown"


ANTI_RELATIONS = frozenset({Relation.ANTIREAL, Relation.BOTH, Relation.TRIVIAL})


@dataclass(frozen=True)
class ConjugacyClass:
    tags: frozenset[StructureTag]
    status: str = "proved"

    def sorted_tags(self) -> list[StructureTag]:
        return sorted(self.tags, key=lambda tag: list(StructureTag).index(tag))


@dataclass(frozen=True)
class ConjugacyTable:
    """Conjugacy classes of real structures fibered over c_B."""

    classes: tuple[ConjugacyClass, ...] = ()

    @property
    def admissible_tags(self) -> frozenset[StructureTag]:
        return frozenset(tag for cls in self.classes for tag in cls.tags)

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class ConjugationWitness:
    """Automorphism Phi fibered over phi together with the relations that make it conjugate c- to c+."""

    case: str
    phi: ChartMap
    hypotheses: tuple[Hypothesis, ...] = ()
    name: str = "witness"

    def __post_init__(self) -> None:
        if self.case not in ("a", "b"):
            raise ValueError(f"Witness case must be 'a' or 'b', got {self.case!r}")
        (m00, m01), (m10, m11) = self.phi.matrix
        if self.case == "a" and not (m01.is_zero and m10.is_zero):
            raise ValueError("A case-a witness is diagonal: (z1 : z0) -> (g∘phi z1 : z0)")
        if self.case == "b" and not (m00.is_zero and m11.is_zero):
            raise ValueError("A case-b witness swaps the sections: (z1 : z0) -> (z0 : h∘phi z1)")
        if self.phi.antiholo:
            raise ValueError("A conjugating automorphism is holomorphic")


def c_plus_map() -> ChartMap:
    return c_sign_map(1)


def c_minus_map() -> ChartMap:
    return c_sign_map(-1)


def validate_witness(witness: ConjugationWitness, budget: int = DEFAULT_REWRITE_BUDGET) -> None:
    """Raise WitnessValidationError unless the witness conjugates c- to c+."""

    if not verify_conjugation(witness.phi, c_minus_map(), c_plus_map(), witness.hypotheses, budget):
        raise WitnessValidationError(f"Witness {witness.name!r} does not conjugate c- to c+")


def cplus_cminus_conjugate(
    b: BundleClass,
    ct: CurveType,
    witness: ConjugationWitness | None = None,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> Conjugacy:
    """Decide whether c_{f_D} and c_{-f_D} are conjugate, or report that it is not known."""

    require_consistent(b, ct)
    if b.relation not in ANTI_RELATIONS:
        raise ValueError(f"c+ and c- need c_B*L = L*, bundle relation is {b.relation.value}")
    if b.relation is Relation.TRIVIAL or ct.mu % 2 == 1:
        return Conjugacy.NOT_CONJUGATE
    if witness is not None:
        validate_witness(witness, budget)
        return Conjugacy.CONJUGATE
    logger.warning("no conjugation witness for c+/c- over curve %s; answer is unknown", ct)
    return Conjugacy.UNKNOWN


def _cplus_cminus_classes(conjugacy: Conjugacy) -> list[ConjugacyClass]:
    pair = frozenset({StructureTag.C_PLUS, StructureTag.C_MINUS})
    if conjugacy is Conjugacy.CONJUGATE:
        return [ConjugacyClass(pair)]
    if conjugacy is Conjugacy.NOT_CONJUGATE:
        return [
            ConjugacyClass(frozenset({StructureTag.C_PLUS})),
            ConjugacyClass(frozenset({StructureTag.C_MINUS})),
        ]
    return [ConjugacyClass(pair, "unknown")]


def classify_real_structures(
    b: BundleClass,
    ct: CurveType,
    witness: ConjugationWitness | None = None,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> ConjugacyTable:
    """Conjugacy classes of real structures on P(L + L0) fibered over c_B."""

    if ct.g == 0:
        raise ValueError("Rational bases are covered by the rational table, not this classification")
    lift = real_lift_exists(b, ct)
    classes: list[ConjugacyClass] = []
    if b.relation is Relation.REAL and lift:
        classes.append(ConjugacyClass(frozenset({StructureTag.DIRECT_SUM})))
    elif b.relation in (Relation.ANTIREAL, Relation.TRIVIAL) or (b.relation is Relation.BOTH and not lift):
        classes.extend(_cplus_cminus_classes(cplus_cminus_conjugate(b, ct, witness, budget)))
    elif b.relation is Relation.BOTH:
        classes.append(ConjugacyClass(frozenset({StructureTag.DIRECT_SUM})))
        classes.extend(_cplus_cminus_classes(cplus_cminus_conjugate(b, ct, witness, budget)))
    return ConjugacyTable(tuple(classes))


def admissible_tags(b: BundleClass, ct: CurveType) -> frozenset[StructureTag]:
    """Tags occurring in classify_real_structures; on B x P1 the direct sum is c+ itself."""

    tags: set[StructureTag] = set()
    if b.relation in (Relation.REAL, Relation.BOTH) and real_lift_exists(b, ct):
        tags.add(StructureTag.DIRECT_SUM)
    if b.relation in ANTI_RELATIONS:
        tags.update({StructureTag.C_PLUS, StructureTag.C_MINUS})
    return frozenset(tags)


def real_part(b: BundleClass, tag: StructureTag, ct: CurveType) -> tuple[int, int]:
    """(tori, Klein bottles) of the real part of c_{f_D} or c_{-f_D}."""

    require_consistent(b, ct)
    if tag is StructureTag.DIRECT_SUM:
        raise ValueError("Direct-sum real parts come from recipe normalization")
    if b.relation not in ANTI_RELATIONS:
        raise ValueError(f"c+ and c- need c_B*L = L*, bundle relation is {b.relation.value}")
    if ct.mu == 0:
        return 0, 0
    component = partition_of(b)
    if component is None:
        raise ValueError("Bundle over a curve with real points needs a partition component")
    plus = len(component.partition.side)
    return (plus if tag is StructureTag.C_PLUS else ct.mu - plus), 0


@dataclass(frozen=True)
class UpperTriangular:
    """Automorphism [[a, b], [0, d]] of L + L0 over the identity."""


@dataclass(frozen=True)
class Swap:
    """Involution phi_lambda exchanging the sections of L and L0, defined when L = L*."""

    lam: str = "lambda"
    section: str = "s"

    def chart_map(self) -> ChartMap:
        """(x, (z1 : z0)) -> (x, (lambda*s(x) z0 : s(x) z1))."""

        kinds = {**DEFAULT_KINDS, self.lam: GeneratorKind.CONSTANT, self.section: GeneratorKind.FUNCTION}
        return ChartMap.build("id", False, [["0", f"{self.lam}*{self.section}"], [self.section, "0"]], kinds)


AutDescriptor = Union[UpperTriangular, Swap]


def automorphism_lifts(b: BundleClass, phi: AutDescriptor) -> bool:
    """Whether an automorphism of X fibered over the identity lifts to L + L0."""

    if b.relation is Relation.BOTH:
        return not isinstance(phi, Swap)
    return True
