"""Term-rewriting verifier for projective chart maps over a formal function algebra.

Expressions live in a free commutative algebra generated by atoms g∘w or
conj(g∘w), where w runs over the group <c_B, phi> of two commuting
involutions. Chart maps are projective 2x2 matrices over that algebra,
composed and compared up to a common scalar after rewriting with
user-supplied multiplicative relations.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import sympy

from .config import DEFAULT_REWRITE_BUDGET
from .errors import NonTerminationError, ZeroMapError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupWord:
    """Element c_B^cb * phi^phi of the group generated by c_B and phi."""

    cb: int = 0
    phi: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "cb", self.cb % 2)
        object.__setattr__(self, "phi", self.phi % 2)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.cb ^ other.cb, self.phi ^ other.phi)

    @property
    def inverse(self) -> GroupWord:
        return self

    @property
    def is_identity(self) -> bool:
        return not (self.cb or self.phi)

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        """Parse 'id', 'cB', 'phi' or a dotted product such as 'cB.phi'."""

        word = cls()
        text = text.strip()
        if text in ("", "id"):
            return word
        for token in text.split("."):
            if token == "cB":
                word = word * C_B
            elif token == "phi":
                word = word * PHI
            elif token != "id":
                raise ValueError(f"Unknown group generator {token!r} in word {text!r}")
        return word

    def __str__(self) -> str:
        parts = [name for name, bit in (("cB", self.cb), ("phi", self.phi)) if bit]
        return ".".join(parts) or "id"


IDENTITY = GroupWord()
C_B = GroupWord(cb=1)
PHI = GroupWord(phi=1)
GROUP = (IDENTITY, C_B, PHI, C_B * PHI)


class GeneratorKind(str, Enum):
    FUNCTION = "function"
    CONSTANT = "constant"
    REAL_CONSTANT = "real_constant"


DEFAULT_KINDS: dict[str, GeneratorKind] = {
    "f": GeneratorKind.FUNCTION,
    "g": GeneratorKind.FUNCTION,
    "h": GeneratorKind.FUNCTION,
    "s": GeneratorKind.FUNCTION,
    "x": GeneratorKind.FUNCTION,
    "y": GeneratorKind.FUNCTION,
    "lambda": GeneratorKind.CONSTANT,
    "d": GeneratorKind.REAL_CONSTANT,
    "delta": GeneratorKind.REAL_CONSTANT,
}


@dataclass(frozen=True)
class Atom:
    """Generator precomposed with a group word, optionally conjugated."""

    name: str
    word: GroupWord = IDENTITY
    conj: bool = False
    kind: GeneratorKind = GeneratorKind.FUNCTION

    def __post_init__(self) -> None:
        # constants ignore precomposition; real constants also ignore conjugation
        if self.kind is not GeneratorKind.FUNCTION:
            object.__setattr__(self, "word", IDENTITY)
        if self.kind is GeneratorKind.REAL_CONSTANT:
            object.__setattr__(self, "conj", False)

    def precompose(self, w: GroupWord) -> Atom:
        return Atom(self.name, self.word * w, self.conj, self.kind)

    def conjugate(self) -> Atom:
        return Atom(self.name, self.word, not self.conj, self.kind)

    def sort_key(self) -> tuple[str, int, int, bool]:
        return (self.name, self.word.cb, self.word.phi, self.conj)

    def __str__(self) -> str:
        text = ("~" if self.conj else "") + self.name
        if not self.word.is_identity:
            text += f"@{self.word}"
        return text


def _collect(pairs: Iterable[tuple[Atom, int]]) -> dict[Atom, int]:
    exps: dict[Atom, int] = {}
    for atom, e in pairs:
        exps[atom] = exps.get(atom, 0) + e
    return exps


@dataclass(frozen=True)
class Monomial:
    """Product of atoms with nonzero integer exponents, in canonical order."""

    powers: tuple[tuple[Atom, int], ...] = ()

    @classmethod
    def of(cls, exps: Mapping[Atom, int]) -> Monomial:
        items = [(a, e) for a, e in exps.items() if e != 0]
        return cls(tuple(sorted(items, key=lambda item: item[0].sort_key())))

    def exponent(self, atom: Atom) -> int:
        return dict(self.powers).get(atom, 0)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial.of(_collect(self.powers + other.powers))

    def inverse(self) -> Monomial:
        return Monomial.of({a: -e for a, e in self.powers})

    def precompose(self, w: GroupWord) -> Monomial:
        return Monomial.of(_collect((a.precompose(w), e) for a, e in self.powers))

    def conjugate(self) -> Monomial:
        return Monomial.of(_collect((a.conjugate(), e) for a, e in self.powers))

    def divides(self, other: Monomial) -> bool:
        """True when every power here occurs in other with the same sign and at least the same size."""

        theirs = dict(other.powers)
        for atom, e in self.powers:
            t = theirs.get(atom, 0)
            if t * e <= 0 or abs(t) < abs(e):
                return False
        return True

    def sort_key(self) -> tuple:
        return tuple((a.sort_key(), e) for a, e in self.powers)

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in self.powers)


ONE_MONOMIAL = Monomial()


@dataclass(frozen=True)
class Expr:
    """Signed monomial; the scalar expressions rules are written in."""

    sign: int
    monomial: Monomial

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"Expression sign must be +1 or -1, got {self.sign}")

    def precompose(self, w: GroupWord) -> Expr:
        return Expr(self.sign, self.monomial.precompose(w))

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + str(self.monomial)


@dataclass(frozen=True)
class Poly:
    """Integer combination of monomials; the empty sum is zero."""

    terms: tuple[tuple[Monomial, int], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[Monomial, int]]) -> Poly:
        coeffs: dict[Monomial, int] = {}
        for mono, c in pairs:
            coeffs[mono] = coeffs.get(mono, 0) + c
        items = [(m, c) for m, c in coeffs.items() if c != 0]
        return cls(tuple(sorted(items, key=lambda item: item[0].sort_key())))

    @classmethod
    def constant(cls, c: int) -> Poly:
        return cls.of([(ONE_MONOMIAL, c)])

    @classmethod
    def from_expr(cls, e: Expr) -> Poly:
        return cls.of([(e.monomial, e.sign)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def single_term(self) -> tuple[Monomial, int] | None:
        return self.terms[0] if len(self.terms) == 1 else None

    def __add__(self, other: Poly) -> Poly:
        return Poly.of(self.terms + other.terms)

    def __neg__(self) -> Poly:
        return Poly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        return Poly.of((m1 * m2, c1 * c2) for m1, c1 in self.terms for m2, c2 in other.terms)

    def precompose(self, w: GroupWord) -> Poly:
        return Poly.of((m.precompose(w), c) for m, c in self.terms)

    def conjugate(self) -> Poly:
        return Poly.of((m.conjugate(), c) for m, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for mono, c in self.terms:
            if mono == ONE_MONOMIAL:
                body = str(abs(c))
            elif abs(c) == 1:
                body = str(mono)
            else:
                body = f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)


ZERO = Poly()
ONE = Poly.constant(1)

Matrix = tuple[tuple[Poly, Poly], tuple[Poly, Poly]]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _map_entries(m: Matrix, fn) -> Matrix:
    return ((fn(m[0][0]), fn(m[0][1])), (fn(m[1][0]), fn(m[1][1])))


def _entries(m: Matrix) -> list[Poly]:
    return [m[0][0], m[0][1], m[1][0], m[1][1]]


@dataclass(frozen=True)
class ChartMap:
    """Map (x, (z1 : z0)) -> (base(x), M(x) . v) in one trivialisation.

    v is (z1, z0), or its conjugate when the map is antiholomorphic.
    """

    base: GroupWord
    antiholo: bool
    matrix: Matrix

    def __post_init__(self) -> None:
        if all(e.is_zero for e in _entries(self.matrix)):
            raise ZeroMapError("Chart map has an identically zero matrix")
        if self.determinant().is_zero:
            raise ValueError("Chart map is not invertible: determinant is zero")

    @classmethod
    def build(
        cls,
        base: str,
        antiholo: bool,
        rows: Sequence[Sequence[str]],
        kinds: Mapping[str, GeneratorKind] | None = None,
    ) -> ChartMap:
        """Create a chart map from a group word and 2x2 expression strings."""

        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ValueError("Chart map matrix must be 2x2")
        (a, b), (c, d) = [[parse_poly(entry, kinds) for entry in row] for row in rows]
        return cls(GroupWord.parse(base), bool(antiholo), ((a, b), (c, d)))

    def determinant(self) -> Poly:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def rows(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.matrix]


IDENTITY_MAP = ChartMap(IDENTITY, False, ((ONE, ZERO), (ZERO, ONE)))


def compose(a: ChartMap, b: ChartMap) -> ChartMap:
    """Return a∘b: b is applied first."""

    left = _map_entries(a.matrix, lambda e: e.precompose(b.base))
    right = _map_entries(b.matrix, Poly.conjugate) if a.antiholo else b.matrix
    matrix = _matmul(left, right)
    if all(e.is_zero for e in _entries(matrix)):
        raise ZeroMapError("Composition produced an identically zero matrix")
    return ChartMap(a.base * b.base, a.antiholo != b.antiholo, matrix)


def inverse(m: ChartMap) -> ChartMap:
    """Projective inverse through the adjugate matrix."""

    (a, b), (c, d) = m.matrix
    adj: Matrix = ((d, -b), (-c, a))
    if m.antiholo:
        adj = _map_entries(adj, Poly.conjugate)
    base = m.base.inverse
    return ChartMap(base, m.antiholo, _map_entries(adj, lambda e: e.precompose(base)))


@dataclass(frozen=True)
class Hypothesis:
    """Oriented multiplicative relation lhs -> rhs."""

    lhs: Expr
    rhs: Expr

    def __post_init__(self) -> None:
        if self.lhs.monomial == ONE_MONOMIAL:
            raise ValueError("Hypothesis left side must not be a bare sign")

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class _Rule:
    pattern: Monomial
    replacement: Monomial
    sign: int


class RewriteSystem:
    """Fixpoint rewriting of monomials with every group instance of each hypothesis.

    A hypothesis sL*L = sR*R rewrites a monomial containing L to one
    containing R with the coefficient multiplied by sL*sR; the inverse L^-1
    rewrites to R^-1 the same way. Instances are generated in group order
    and an instance whose reverse is already present is dropped.
    """

    def __init__(
        self,
        hypotheses: Sequence[Hypothesis],
        budget: int = DEFAULT_REWRITE_BUDGET,
        seed: int | None = None,
    ) -> None:
        self.budget = budget
        self.steps = 0
        rules: list[_Rule] = []
        for hyp in hypotheses:
            sign = hyp.lhs.sign * hyp.rhs.sign
            for w in GROUP:
                pattern = hyp.lhs.monomial.precompose(w)
                replacement = hyp.rhs.monomial.precompose(w)
                for rule in (
                    _Rule(pattern, replacement, sign),
                    _Rule(pattern.inverse(), replacement.inverse(), sign),
                ):
                    if rule.pattern == rule.replacement and sign == 1:
                        continue
                    # an instance may undo an earlier one (f@phi -> f against f -> f@phi)
                    reverse = _Rule(rule.replacement, rule.pattern, sign)
                    if rule not in rules and reverse not in rules:
                        rules.append(rule)
        if seed is not None:
            random.Random(seed).shuffle(rules)
        self._rules = rules

    def _rewrite_term(self, mono: Monomial, coeff: int) -> tuple[Monomial, int]:
        while True:
            rule = next((r for r in self._rules if r.pattern.divides(mono)), None)
            if rule is None:
                return mono, coeff
            mono = mono * rule.pattern.inverse() * rule.replacement
            coeff *= rule.sign
            self.steps += 1
            if self.steps > self.budget:
                raise NonTerminationError(f"Rewriting exceeded the budget of {self.budget} steps")

    def normalize(self, p: Poly) -> Poly:
        """Rewrite every term to a fixpoint and collect."""

        return Poly.of(self._rewrite_term(m, c) for m, c in p.terms)


def projectively_equal(
    a: ChartMap,
    b: ChartMap,
    hypotheses: Sequence[Hypothesis] = (),
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> bool:
    """Compare two chart maps up to a common scalar, modulo the hypotheses."""

    if a.base != b.base or a.antiholo != b.antiholo:
        return False
    system = RewriteSystem(hypotheses, budget)
    ea = [system.normalize(e) for e in _entries(a.matrix)]
    eb = [system.normalize(e) for e in _entries(b.matrix)]
    if [e.is_zero for e in ea] != [e.is_zero for e in eb]:
        return False
    support = [i for i, e in enumerate(ea) if not e.is_zero]
    for i, j in combinations(support, 2):
        if not system.normalize(ea[i] * eb[j] - ea[j] * eb[i]).is_zero:
            return False
    logger.debug("projective comparison closed in %d rewrite steps", system.steps)
    return True


def is_projective_identity(
    m: ChartMap,
    hypotheses: Sequence[Hypothesis] = (),
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> bool:
    """True when m is a scalar multiple of the identity after rewriting."""

    if m.antiholo or not m.base.is_identity:
        raise ValueError("Only holomorphic maps over the identity can be projective identities")
    return projectively_equal(m, IDENTITY_MAP, hypotheses, budget)


def verify_involution(
    c: ChartMap,
    hypotheses: Sequence[Hypothesis] = (),
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> bool:
    """Check that c∘c is the projective identity."""

    square = compose(c, c)
    if square.antiholo or not square.base.is_identity:
        return False
    return is_projective_identity(square, hypotheses, budget)


def verify_conjugation(
    phi: ChartMap,
    cminus: ChartMap,
    cplus: ChartMap,
    hypotheses: Sequence[Hypothesis] = (),
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> bool:
    """Check phi^-1 ∘ cminus ∘ phi = cplus up to scalar."""

    conjugated = compose(inverse(phi), compose(cminus, phi))
    return projectively_equal(conjugated, cplus, hypotheses, budget)


def c_sign_map(sign: int, kinds: Mapping[str, GeneratorKind] | None = None) -> ChartMap:
    """Chart map of c_{sign*f}: (x, (z1 : z0)) -> (c_B(x), (conj z0 : sign*f∘c_B(x) conj z1))."""

    entry = "f@cB" if sign > 0 else "-f@cB"
    return ChartMap.build("cB", True, [["0", "1"], [entry, "0"]], kinds)


def verify_step2_normalization(
    a: str | int | sympy.Expr,
    d: str | int | sympy.Expr,
    *,
    flip_sign: bool = False,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> bool:
    """Check that diag(1, delta) normalizes c+∘diag(a, d) to c+ or c-.

    The scalar facts (d/a real, its sign, delta = 1/sqrt|d/a|) are settled
    with sympy; the chart computation then runs with real constants d and
    delta under the relation d*delta^2 = sign(d/a).
    """

    a_val = sympy.sympify(a)
    d_val = sympy.sympify(d)
    if a_val.is_zero or d_val.is_zero:
        raise ValueError("Diagonal entries of the lifted automorphism must be nonzero")
    ratio = sympy.simplify(d_val / a_val)
    if ratio.is_real is not True:
        logger.warning("d/a = %s is not provably real", ratio)
        return False
    sign = sympy.sign(ratio)
    if sign not in (1, -1):
        logger.warning("sign of d/a = %s is undetermined", ratio)
        return False
    delta = 1 / sympy.sqrt(sympy.Abs(ratio))
    if sympy.simplify(ratio * delta**2 - sign) != 0:
        return False
    sign = int(sign)

    cplus = c_sign_map(1)
    tilde = compose(cplus, ChartMap.build("id", False, [["1", "0"], ["0", "d"]]))
    psi = ChartMap.build("id", False, [["1", "0"], ["0", "delta"]])
    relation_sign = -sign if flip_sign else sign
    hyp = parse_hypothesis(f"d*delta^2 -> {'-' if relation_sign < 0 else ''}1")
    return verify_conjugation(psi, tilde, c_sign_map(sign), [hyp], budget)


def gluing_exponent(
    n_i: int,
    n_j: int,
    *,
    swap: bool,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> int:
    """Exponent of conj(x) in the U_{p_i} -> U_{p_j} transition of a real structure.

    x and y are local coordinates at p_i and p_j = c_B(p_i) with
    y∘c_B = conj(x); the charts glue through diag(x^-n_i, 1) and
    diag(y^-n_j, 1). swap selects c_{f} ([[0, 1], [f∘c_B, 0]]) rather than
    a lifted line-bundle structure (diag(f∘c_B, 1)).
    """

    hyp = parse_hypothesis("y@cB -> ~x")
    psi_i = ChartMap.build("id", False, [[f"x^{-n_i}", "0"], ["0", "1"]])
    psi_j = ChartMap.build("id", False, [[f"y^{-n_j}", "0"], ["0", "1"]])
    rows = [["0", "1"], ["f@cB", "0"]] if swap else [["f@cB", "0"], ["0", "1"]]
    c = ChartMap.build("cB", True, rows)
    local = compose(inverse(psi_j), compose(c, psi_i))

    system = RewriteSystem([hyp], budget)
    (m00, m01), (m10, m11) = _map_entries(local.matrix, system.normalize)
    num, den = (m10, m01) if swap else (m00, m11)
    num_term, den_term = num.single_term(), den.single_term()
    if num_term is None or den_term is None:
        raise ValueError("Transition map entries did not reduce to monomials")
    ratio = num_term[0] * den_term[0].inverse()
    return ratio.exponent(Atom("x", IDENTITY, True))


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<atom>~?[A-Za-z_][A-Za-z0-9_]*(?:@[A-Za-z.]+)?)|(?P<op>[-+*^]))"
)


class _ExprParser:
    def __init__(self, text: str, kinds: Mapping[str, GeneratorKind]) -> None:
        self.text = text
        self.kinds = kinds
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            match = _TOKEN.match(stripped, pos)
            if match is None or match.end() == pos:
                raise ValueError(f"Cannot parse expression {text!r} at position {pos}")
            kind = match.lastgroup or ""
            self.tokens.append((kind, match.group(kind)))
            pos = match.end()
        self.pos = 0

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ValueError(f"Unexpected end of expression {self.text!r}")
        self.pos += 1
        return token

    def parse_poly(self) -> Poly:
        if not self.tokens:
            raise ValueError("Empty expression")
        terms: list[tuple[Monomial, int]] = []
        sign = 1
        if self._peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self._take()[1] == "-" else 1
        while True:
            mono, coeff = self._parse_term()
            terms.append((mono, sign * coeff))
            token = self._peek()
            if token is None:
                break
            if token not in (("op", "+"), ("op", "-")):
                raise ValueError(f"Unexpected {token[1]!r} in expression {self.text!r}")
            sign = -1 if self._take()[1] == "-" else 1
        return Poly.of(terms)

    def _parse_term(self) -> tuple[Monomial, int]:
        exps: dict[Atom, int] = {}
        coeff = 1
        while True:
            kind, value = self._take()
            if kind == "num":
                coeff *= int(value)
            elif kind == "atom":
                atom = self._atom(value)
                power = 1
                if self._peek() == ("op", "^"):
                    self._take()
                    negative = False
                    if self._peek() == ("op", "-"):
                        self._take()
                        negative = True
                    num_kind, num = self._take()
                    if num_kind != "num":
                        raise ValueError(f"Expected an integer exponent in {self.text!r}")
                    power = -int(num) if negative else int(num)
                exps[atom] = exps.get(atom, 0) + power
            else:
                raise ValueError(f"Unexpected {value!r} in expression {self.text!r}")
            if self._peek() != ("op", "*"):
                return Monomial.of(exps), coeff
            self._take()

    def _atom(self, token: str) -> Atom:
        conj = token.startswith("~")
        body = token[1:] if conj else token
        name, _, word = body.partition("@")
        kind = self.kinds.get(name)
        if kind is None:
            raise ValueError(f"Undeclared generator {name!r}")
        return Atom(name, GroupWord.parse(word), conj, GeneratorKind(kind))


def parse_poly(text: str, kinds: Mapping[str, GeneratorKind] | None = None) -> Poly:
    """Parse an expression such as '-f@cB.phi*~g@phi + 2*s^-1' or '0'."""

    return _ExprParser(str(text), DEFAULT_KINDS if kinds is None else kinds).parse_poly()


def parse_expr(text: str, kinds: Mapping[str, GeneratorKind] | None = None) -> Expr:
    """Parse a signed monomial."""

    term = parse_poly(text, kinds).single_term()
    if term is None or term[1] not in (1, -1):
        raise ValueError(f"Expected a signed monomial, got {text!r}")
    return Expr(term[1], term[0])


def parse_hypothesis(text: str, kinds: Mapping[str, GeneratorKind] | None = None) -> Hypothesis:
    """Parse a relation written 'lhs -> rhs'."""

    lhs, sep, rhs = text.partition("->")
    if not sep:
        raise ValueError(f"Hypothesis {text!r} must be written 'lhs -> rhs'")
    return Hypothesis(parse_expr(lhs, kinds), parse_expr(rhs, kinds))
