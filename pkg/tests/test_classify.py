from __future__ import annotations

from collections import Counter
from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledforge.bundle import BundleClass, DivisorSymbol, Orbit, PointLabel, Relation
from ruledforge.classify import (
    SPIN_TABLE,
    ConjugatePair,
    DeformationClass,
    Quintuple,
    RationalClass,
    RealPoint,
    SurfaceRecipe,
    allowability,
    elementary_transform,
    enumerate_classes,
    is_allowable,
    normalize,
    quotient_spin,
    rational_classes,
    realize,
    realize_decomposable,
    recipe_validity,
    same_deformation_class,
    topological_type,
    trivial_bundle,
)
from ruledforge.curve import CurveType, EmptyRealPart, JacFlag, is_valid_curve_type
from ruledforge.surface import StructureTag


def _curve_types(max_g):
    return [
        CurveType(g, mu, eps)
        for g in range(1, max_g + 1)
        for mu in range(0, g + 2)
        for eps in (0, 1)
        if is_valid_curve_type(g, mu, eps)
    ]


def _allowable(max_g):
    for ct in _curve_types(max_g):
        for t in range(ct.mu + 1):
            for k in range(ct.mu + 1 - t):
                yield Quintuple(t, k, ct.g, ct.mu, ct.eps)


@pytest.mark.parametrize(
    ("q", "reason"),
    [
        (Quintuple(2, 1, 3, 3, 0), ""),
        (Quintuple(1, 1, 2, 1, 0), "t+k > mu"),
        (Quintuple(0, 0, 1, 0, 1), "invalid curve type"),
        (Quintuple(0, 0, 0, 1, 1), "g = 0"),
        (Quintuple(-1, 0, 0, 7, 1), "t,k must be non-negative"),
        (Quintuple(0, 0, 2, 4, 0), "invalid curve type"),
    ],
)
def test_allowability_names_the_first_violation(q, reason):
    assert allowability(q) == (reason == "", reason)
    assert is_allowable(q) is (reason == "")


def test_realization_round_trip_up_to_genus_six():
    checked = 0
    for q in _allowable(6):
        spins = (False, True) if q.mu == 0 else (None,)
        for spin in spins:
            recipe = realize(q, spin)
            assert topological_type(recipe) == q
            assert normalize(recipe) == DeformationClass(q, spin)
            checked += 1
    assert checked > 100


@pytest.mark.parametrize("ct", _curve_types(6), ids=str)
def test_class_counts(ct):
    classes = enumerate_classes(ct)
    expected = 2 if ct.mu == 0 else (ct.mu + 1) * (ct.mu + 2) // 2
    assert len(classes) == expected
    assert classes == sorted(classes, key=DeformationClass.sort_key)
    assert len(set(classes)) == expected


def test_enumerate_without_real_points_lists_both_spin_bits():
    assert [c.spin for c in enumerate_classes(CurveType(2, 0, 0))] == [False, True]
    with pytest.raises(ValueError, match="rational"):
        enumerate_classes(CurveType(0, 1, 1))


def test_realize_requires_matching_spin_bit():
    with pytest.raises(ValueError, match="spin bit is required"):
        realize(Quintuple(0, 0, 2, 0, 0))
    with pytest.raises(ValueError, match="only applies"):
        realize(Quintuple(1, 0, 2, 1, 0), True)
    with pytest.raises(ValueError, match="not allowable"):
        realize(Quintuple(3, 0, 2, 1, 0))


@pytest.mark.parametrize("q", [q for q in _allowable(4) if q.mu > 0 and q.t + q.k == q.mu], ids=str)
def test_decomposable_realization(q):
    recipe = realize_decomposable(q)
    assert recipe.tag is StructureTag.DIRECT_SUM
    assert recipe.bundle.degree == q.k
    assert topological_type(recipe) == q


def test_decomposable_realization_meets_every_component():
    with pytest.raises(ValueError, match="t\\+k = mu"):
        realize_decomposable(Quintuple(0, 1, 2, 2, 0))


def test_direct_sum_with_pair_points_and_negative_coefficients():
    labels = [
        PointLabel("x1", Orbit.REAL, component=1),
        PointLabel("x2", Orbit.REAL, component=2),
        PointLabel("p", Orbit.PAIR, mate="q"),
        PointLabel("q", Orbit.PAIR, mate="p"),
    ]
    divisor = DivisorSymbol.build(labels, {"x1": 3, "x2": -2, "p": 1, "q": 1})
    ct = CurveType(2, 2, 0)
    recipe = SurfaceRecipe(ct, BundleClass(3, Relation.REAL), StructureTag.DIRECT_SUM, (), divisor)
    assert topological_type(recipe) == Quintuple(1, 1, 2, 2, 0)


def _carrying(recipe):
    if recipe.curve.mu == 0 or recipe.tag is not StructureTag.C_PLUS:
        return []
    return sorted(recipe.bundle.jac_component.partition.side)


@st.composite
def realized_recipes(draw):
    ct = draw(st.sampled_from(_curve_types(4)))
    carried = draw(st.integers(0, ct.mu))
    k = draw(st.integers(0, carried))
    spin = draw(st.booleans()) if ct.mu == 0 else None
    return realize(Quintuple(carried - k, k, ct.g, ct.mu, ct.eps), spin)


@given(realized_recipes(), st.data())
@settings(max_examples=1000, deadline=None)
def test_moves_change_only_real_point_parities(recipe, data):
    carrying = _carrying(recipe)
    sites = [ConjugatePair()] + [RealPoint(c) for c in carrying]
    moves = data.draw(st.lists(st.sampled_from(sites), max_size=20))
    before = normalize(recipe)

    counts = Counter(site.component for site in recipe.transforms if isinstance(site, RealPoint))
    moved = recipe
    for site in moves:
        moved = elementary_transform(moved, site)
        if isinstance(site, RealPoint):
            counts[site.component] += 1
    klein = sum(1 for c in carrying if counts[c] % 2 == 1)
    expected = replace(before.q, t=len(carrying) - klein, k=klein)
    after = normalize(moved)
    assert after == DeformationClass(expected, before.spin)

    # a second copy of every move cancels the parity flips
    doubled = moved
    for site in moves:
        doubled = elementary_transform(doubled, site)
    assert normalize(doubled) == before
    assert normalize(elementary_transform(moved, ConjugatePair())) == after


def test_conjugate_pairs_are_neutral_without_real_points():
    recipe = realize(Quintuple(0, 0, 3, 0, 0), False)
    assert normalize(elementary_transform(recipe, ConjugatePair())) == normalize(recipe)


def test_transforms_need_a_carrying_component():
    recipe = realize(Quintuple(1, 0, 2, 2, 0))
    with pytest.raises(ValueError, match="carries no real surface component"):
        elementary_transform(recipe, RealPoint(2))
    with pytest.raises(ValueError, match="out of range"):
        elementary_transform(recipe, RealPoint(3))


def test_recipe_validity_reasons():
    ct = CurveType(2, 2, 0)
    recipe = realize(Quintuple(1, 0, 2, 2, 0))
    bad_site = replace(recipe, transforms=(RealPoint(2),))
    assert recipe_validity(bad_site) == (False, "component 2 carries no real surface component")
    wrong_degree = SurfaceRecipe(ct, BundleClass(1, Relation.REAL), StructureTag.DIRECT_SUM)
    assert recipe_validity(wrong_degree)[1] == "divisor degree 0 differs from bundle degree 1"
    labels = [PointLabel("p", Orbit.PAIR, mate="q"), PointLabel("q", Orbit.PAIR, mate="p")]
    lopsided = SurfaceRecipe(
        ct, BundleClass(1, Relation.REAL), StructureTag.DIRECT_SUM, (), DivisorSymbol.build(labels, {"p": 1})
    )
    assert recipe_validity(lopsided)[1] == "divisor of a real bundle must be c_B-invariant"
    ok, reason = recipe_validity(replace(recipe, tag=StructureTag.DIRECT_SUM))
    assert not ok and "not admissible" in reason
    rational = SurfaceRecipe(CurveType(0, 1, 1), BundleClass(0, Relation.REAL), StructureTag.DIRECT_SUM)
    assert recipe_validity(rational) == (False, "g = 0")


def test_spin_bit_separates_classes_without_real_points():
    plus = realize(Quintuple(0, 0, 2, 0, 0), True)
    minus = realize(Quintuple(0, 0, 2, 0, 0), False)
    assert not same_deformation_class(plus, minus)
    assert same_deformation_class(plus, SurfaceRecipe(CurveType(2, 0, 0), trivial_bundle(CurveType(2, 0, 0)), StructureTag.C_PLUS))


def test_equal_quintuples_are_equivalent():
    a = realize(Quintuple(1, 1, 3, 3, 0))
    b = realize_decomposable(Quintuple(2, 1, 3, 3, 0))
    c = replace(realize(Quintuple(1, 1, 3, 3, 0)), transforms=(RealPoint(1), RealPoint(2), RealPoint(2)))
    assert same_deformation_class(a, c)
    assert not same_deformation_class(a, b)
    with pytest.raises(ValueError):
        same_deformation_class(a, SurfaceRecipe(CurveType(0, 1, 1), BundleClass(0, Relation.REAL), StructureTag.DIRECT_SUM))


def test_spin_table_cells():
    odd_nontrivial = BundleClass(0, Relation.ANTIREAL, None, EmptyRealPart(JacFlag.NONTRIVIAL))
    ct = CurveType(1, 0, 0)
    assert quotient_spin(SurfaceRecipe(ct, odd_nontrivial, StructureTag.C_PLUS)) is False
    assert quotient_spin(SurfaceRecipe(ct, odd_nontrivial, StructureTag.C_MINUS)) is False
    assert quotient_spin(SurfaceRecipe(ct, trivial_bundle(ct), StructureTag.C_MINUS)) is True
    assert quotient_spin(SurfaceRecipe(CurveType(2, 0, 0), trivial_bundle(CurveType(2, 0, 0)), StructureTag.C_MINUS)) is False
    assert len(SPIN_TABLE) == 6
    with pytest.raises(ValueError, match="mu = 0"):
        quotient_spin(realize(Quintuple(1, 0, 1, 1, 0)))


def test_deformation_class_validation():
    with pytest.raises(ValueError, match="not allowable"):
        DeformationClass(Quintuple(1, 1, 2, 1, 0))
    with pytest.raises(ValueError, match="Spin bit"):
        DeformationClass(Quintuple(0, 0, 2, 0, 0))
    with pytest.raises(ValueError, match="Spin bit"):
        DeformationClass(Quintuple(1, 0, 2, 1, 0), True)


def test_rational_table():
    table = rational_classes()
    assert len(table) == 4
    assert [c for c in table if not c.fibered] == [RationalClass("sphere", False)]
    empties = [c for c in table if c.real_part == "empty"]
    assert sorted(c.quotient_spin for c in empties) == [False, True]


def _recipes_over(ct):
    spins = (False, True) if ct.mu == 0 else (None,)
    for t in range(ct.mu + 1):
        for k in range(ct.mu + 1 - t):
            for spin in spins:
                base = realize(Quintuple(t, k, ct.g, ct.mu, ct.eps), spin)
                for pairs in range(3):
                    yield replace(base, transforms=base.transforms + (ConjugatePair(),) * pairs)
                for counts in product(range(3), repeat=ct.mu):
                    extra = tuple(RealPoint(c) for c, n in enumerate(counts, start=1) for _ in range(n))
                    recipe = replace(base, transforms=base.transforms + extra)
                    if extra and recipe_validity(recipe)[0]:
                        yield recipe


@pytest.mark.parametrize("ct", [ct for ct in _curve_types(4) if ct.mu <= 4], ids=str)
def test_deformation_equivalence_is_an_equivalence_relation(ct):
    representatives = {}
    for recipe in _recipes_over(ct):
        assert same_deformation_class(recipe, recipe)
        rep = representatives.setdefault(normalize(recipe), recipe)
        assert same_deformation_class(recipe, rep)
        assert same_deformation_class(rep, recipe)
    reps = list(representatives.values())
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            assert not same_deformation_class(a, b)
            assert not same_deformation_class(b, a)
    assert sorted(representatives, key=DeformationClass.sort_key) == enumerate_classes(ct)


@pytest.mark.parametrize(
    ("g", "mu", "eps"),
    [(g, mu, eps) for g in range(1, 7) for mu in range(-1, 9) for eps in (-1, 0, 1, 2)],
)
def test_enumeration_rejects_exactly_invalid_curve_types(g, mu, eps):
    ct = CurveType(g, mu, eps)
    if is_valid_curve_type(g, mu, eps):
        assert enumerate_classes(ct)
    else:
        with pytest.raises(ValueError, match="Invalid curve type"):
            enumerate_classes(ct)


def test_direct_sum_without_divisor_reads_as_zero_divisor():
    ct = CurveType(2, 2, 0)
    bare = SurfaceRecipe(ct, BundleClass(0, Relation.REAL), StructureTag.DIRECT_SUM)
    explicit = replace(bare, divisor=DivisorSymbol.build([PointLabel("x1", Orbit.REAL, component=1)], {}))
    assert recipe_validity(bare) == (True, "")
    assert topological_type(bare) == topological_type(explicit) == Quintuple(2, 0, 2, 2, 0)
