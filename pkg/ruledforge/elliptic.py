"""Exact model of the curve C/Z[i] with c_B(z) = conj(z) + 1/2, its divisors and double covers."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .curve import JacFlag

Rational = Fraction | int | str


def _frac(value: Rational) -> Fraction:
    return Fraction(value) % 1


@dataclass(frozen=True, order=True)
class TorusPoint:
    """Point x + iy of C/Z[i] with both coordinates reduced to [0, 1)."""

    x: Fraction
    y: Fraction

    def __init__(self, x: Rational, y: Rational) -> None:
        object.__setattr__(self, "x", _frac(x))
        object.__setattr__(self, "y", _frac(y))

    def __add__(self, other: TorusPoint) -> TorusPoint:
        return TorusPoint(self.x + other.x, self.y + other.y)

    def __neg__(self) -> TorusPoint:
        return TorusPoint(-self.x, -self.y)

    def __sub__(self, other: TorusPoint) -> TorusPoint:
        return self + (-other)

    def __rmul__(self, n: int) -> TorusPoint:
        return TorusPoint(n * self.x, n * self.y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = TorusPoint(0, 0)
P0 = ORIGIN
Q0 = TorusPoint(Fraction(1, 2), 0)
P1 = TorusPoint(0, Fraction(1, 2))
Q1 = TorusPoint(Fraction(1, 2), Fraction(1, 2))


@dataclass(frozen=True)
class AffineInvolution:
    """(x, y) -> (a*x + t.x, b*y + t.y) on the torus; squares to the identity."""

    a: int
    b: int
    t: TorusPoint = ORIGIN

    def __post_init__(self) -> None:
        if self.a not in (1, -1) or self.b not in (1, -1):
            raise ValueError(f"Linear part must be diagonal with entries +-1, got ({self.a}, {self.b})")
        if ((self.a + 1) * self.t.x) % 1 or ((self.b + 1) * self.t.y) % 1:
            raise ValueError(f"Map with linear part ({self.a}, {self.b}) and translation {self.t} is not an involution")

    @property
    def is_antiholomorphic(self) -> bool:
        return self.a != self.b


C_B = AffineInvolution(1, -1, Q0)
PHI = AffineInvolution(1, 1, Q0)


def apply_map(m: AffineInvolution, p: TorusPoint) -> TorusPoint:
    """Coordinatewise affine action modulo 1."""

    return TorusPoint(m.a * p.x + m.t.x, m.b * p.y + m.t.y)


@dataclass(frozen=True)
class FixedLocus:
    """Fixed set of an involution: each axis is either free (None) or pinned to finitely many values."""

    kind: str
    fixed_x: tuple[Fraction, ...] | None
    fixed_y: tuple[Fraction, ...] | None

    @property
    def component_count(self) -> int:
        if self.kind == "empty":
            return 0
        if self.kind == "torus":
            return 1
        return len(self.fixed_x or (None,)) * len(self.fixed_y or (None,))

    def component_key(self, p: TorusPoint) -> tuple[Fraction | None, Fraction | None]:
        return (
            None if self.fixed_x is None else p.x,
            None if self.fixed_y is None else p.y,
        )


def _axis_fixed(coefficient: int, shift: Fraction) -> tuple[Fraction, ...] | None:
    # None: the whole circle is fixed; () : nothing is
    if coefficient == 1:
        return None if shift == 0 else ()
    half = shift / 2
    return tuple(sorted({half % 1, (half + Fraction(1, 2)) % 1}))


def real_points(m: AffineInvolution) -> FixedLocus:
    """Fixed locus of m as a union of circles, points, the whole torus, or nothing."""

    fx = _axis_fixed(m.a, m.t.x)
    fy = _axis_fixed(m.b, m.t.y)
    if fx == () or fy == ():
        return FixedLocus("empty", (), ())
    if fx is None and fy is None:
        return FixedLocus("torus", None, None)
    if fx is None or fy is None:
        return FixedLocus("circles", fx, fy)
    return FixedLocus("points", fx, fy)


@dataclass(frozen=True)
class TorusDivisor:
    """Finitely supported integer combination of torus points."""

    terms: tuple[tuple[TorusPoint, int], ...] = ()

    @classmethod
    def of(cls, coefficients: Mapping[TorusPoint, int] | Iterable[tuple[TorusPoint, int]]) -> TorusDivisor:
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        merged: dict[TorusPoint, int] = {}
        for point, n in items:
            merged[point] = merged.get(point, 0) + n
        return cls(tuple(sorted((p, n) for p, n in merged.items() if n != 0)))

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.terms)

    @property
    def support(self) -> frozenset[TorusPoint]:
        return frozenset(p for p, _ in self.terms)

    def __add__(self, other: TorusDivisor) -> TorusDivisor:
        return TorusDivisor.of(self.terms + other.terms)

    def __neg__(self) -> TorusDivisor:
        return TorusDivisor.of((p, -n) for p, n in self.terms)

    def __sub__(self, other: TorusDivisor) -> TorusDivisor:
        return self + (-other)

    def __rmul__(self, k: int) -> TorusDivisor:
        return TorusDivisor.of((p, k * n) for p, n in self.terms)

    def image(self, m: AffineInvolution) -> TorusDivisor:
        return TorusDivisor.of((apply_map(m, p), n) for p, n in self.terms)

    def group_sum(self) -> TorusPoint:
        total = ORIGIN
        for p, n in self.terms:
            total = total + n * p
        return total


def is_principal(d: TorusDivisor) -> bool:
    """Abel's criterion: degree zero and group-law sum zero."""

    return d.degree == 0 and d.group_sum() == ORIGIN


def jac_class(d: TorusDivisor) -> TorusPoint:
    """Class of a degree-0 divisor in Jac(B), identified with the torus at base point 0."""

    if d.degree != 0:
        raise ValueError(f"Jacobian class needs a degree-0 divisor, got degree {d.degree}")
    return d.group_sum()


def jac_involution(m: AffineInvolution) -> AffineInvolution:
    """Action induced on degree-0 classes: translations cancel, the linear part stays."""

    return AffineInvolution(m.a, m.b, ORIGIN)


class ClassComponent(str, Enum):
    TRIVIAL = JacFlag.TRIVIAL.value
    NONTRIVIAL = JacFlag.NONTRIVIAL.value
    NOT_FIXED = "not_fixed"


def jac_component_of_class(s: TorusPoint, involution: AffineInvolution = C_B) -> ClassComponent:
    """Locate a Jacobian class among the fixed components of the induced involution."""

    induced = jac_involution(involution)
    if apply_map(induced, s) != s:
        return ClassComponent.NOT_FIXED
    locus = real_points(induced)
    if locus.component_key(s) == locus.component_key(ORIGIN):
        return ClassComponent.TRIVIAL
    return ClassComponent.NONTRIVIAL


def covering_genus(degree: int, g_base: int, ramification: int) -> int:
    """Riemann-Hurwitz: 2g' - 2 = degree*(2g - 2) + sum of (e_i - 1)."""

    if degree < 1 or g_base < 0 or ramification < 0:
        raise ValueError(f"Invalid covering data degree={degree}, g={g_base}, ramification={ramification}")
    twice = degree * (2 * g_base - 2) + ramification + 2
    if twice % 2:
        raise ValueError(f"Total ramification {ramification} has the wrong parity for a degree {degree} cover")
    return twice // 2


def double_cover_genus(g_base: int, branch_count: int) -> int:
    """Genus of a double cover of a genus g_base curve branched over branch_count points."""

    if branch_count < 0 or branch_count % 2:
        raise ValueError(f"A double cover needs an even number of branch points, got {branch_count}")
    return covering_genus(2, g_base, branch_count)


@dataclass(frozen=True, order=True)
class CoverPoint:
    """Preimage label: sheet None marks the single point over a branch point."""

    base: TorusPoint
    sheet: int | None = None

    def __str__(self) -> str:
        return f"{self.base}'" if self.sheet is None else f"{self.base}[{self.sheet}]"


def pullback_divisor(
    d: TorusDivisor,
    ramified_at: Iterable[TorusPoint],
    declared: Iterable[TorusPoint] | None = None,
) -> dict[CoverPoint, int]:
    """Pull a divisor back along a double cover."""

    ramified = frozenset(ramified_at)
    if declared is not None:
        unknown = d.support - frozenset(declared)
        if unknown:
            raise ValueError(f"Divisor is supported on undeclared points {sorted(map(str, unknown))}")
    result: dict[CoverPoint, int] = {}
    for point, n in d.terms:
        if point in ramified:
            result[CoverPoint(point)] = 2 * n
        else:
            result[CoverPoint(point, 0)] = n
            result[CoverPoint(point, 1)] = n
    return result


@dataclass(frozen=True)
class DoubleCover:
    """Double cover of the torus recorded by its branch set."""

    g_base: int
    branch_points: frozenset[TorusPoint]

    @property
    def genus(self) -> int:
        return double_cover_genus(self.g_base, len(self.branch_points))

    def is_invariant_under(self, m: AffineInvolution) -> bool:
        return frozenset(apply_map(m, p) for p in self.branch_points) == self.branch_points

    def pullback(self, d: TorusDivisor) -> dict[CoverPoint, int]:
        return pullback_divisor(d, self.branch_points)


def corspin_cover(k: int) -> DoubleCover:
    """Double cover B_k branched over (0, j/2k) and (1/2, j/2k) for j < 2k."""

    if k < 1:
        raise ValueError(f"Cover index must be at least 1, got {k}")
    points = set()
    for j in range(2 * k):
        y = Fraction(j, 2 * k)
        points.add(TorusPoint(0, y))
        points.add(TorusPoint(Fraction(1, 2), y))
    return DoubleCover(1, frozenset(points))
