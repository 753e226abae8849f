from __future__ import annotations

import json

import pytest

from ruledforge.classify import DeformationClass, Quintuple, realize, realize_decomposable
from ruledforge.codec import (
    bundle_from_dict,
    chart_map_from_dict,
    chart_map_to_dict,
    curve_type_from_dict,
    deformation_class_from_dict,
    deformation_class_to_dict,
    divisor_from_dict,
    dump_json,
    quintuple_from_dict,
    quintuple_to_dict,
    recipe_from_dict,
    recipe_to_dict,
    torus_divisor_from_dict,
    transform_from_dict,
)
from ruledforge.curve import CurveType
from ruledforge.elliptic import P0, P1
from ruledforge.symbolic import c_sign_map

RECIPES = [
    realize(Quintuple(1, 1, 3, 3, 0)),
    realize(Quintuple(0, 0, 3, 0, 0), False),
    realize(Quintuple(0, 0, 2, 0, 0), True),
    realize_decomposable(Quintuple(1, 2, 2, 3, 1)),
]


@pytest.mark.parametrize("recipe", RECIPES)
def test_recipe_json_is_byte_stable(recipe):
    text = dump_json(recipe_to_dict(recipe))
    decoded = recipe_from_dict(json.loads(text))
    assert decoded == recipe
    assert dump_json(recipe_to_dict(decoded)) == text


def test_recipe_keys_keep_their_order():
    payload = recipe_to_dict(RECIPES[0])
    assert list(payload) == ["curve", "bundle", "tag", "transforms"]
    assert list(payload["bundle"]) == ["degree", "relation", "obstruction", "jac_component"]
    assert "divisor" in recipe_to_dict(RECIPES[3])


def test_deformation_class_round_trip():
    c = DeformationClass(Quintuple(0, 0, 2, 0, 0), True)
    payload = deformation_class_to_dict(c)
    assert payload == {"t": 0, "k": 0, "g": 2, "mu": 0, "eps": 0, "spin": True}
    assert deformation_class_from_dict(payload) == c
    with pytest.raises(ValueError, match="spin"):
        deformation_class_from_dict({**payload, "spin": "yes"})
    assert quintuple_from_dict(quintuple_to_dict(c.q)) == c.q


@pytest.mark.parametrize(
    ("payload", "message"),
    [
        ({"g": True, "mu": 0, "eps": 0}, "wrong type"),
        ({"g": 1, "mu": 0}, "missing field 'eps'"),
        ({"g": 1, "mu": 0, "eps": 1}, "Invalid curve type"),
        ([1, 0, 0], "JSON object"),
    ],
)
def test_curve_decoding_errors(payload, message):
    with pytest.raises(ValueError, match=message):
        curve_type_from_dict(payload)


def test_bundle_decoding_errors():
    ct = CurveType(1, 0, 0)
    with pytest.raises(ValueError, match="Unknown bundle relation"):
        bundle_from_dict({"degree": 0, "relation": "sideways"}, ct)
    with pytest.raises(ValueError, match="obstruction"):
        bundle_from_dict({"degree": 1, "relation": "real", "obstruction": True}, ct)
    with pytest.raises(ValueError, match="Unknown Jacobian flag"):
        bundle_from_dict({"degree": 0, "relation": "antireal", "jac_component": {"empty_real_part": "odd"}}, ct)


def test_partition_component_accepts_either_side():
    ct = CurveType(2, 3, 1)
    bundle = bundle_from_dict({"degree": 0, "relation": "antireal", "jac_component": {"partition": [2, 3]}}, ct)
    assert bundle.jac_component.partition.sorted_side() == [1]


def test_transform_decoding():
    assert transform_from_dict({"real_point": 2}).component == 2
    with pytest.raises(ValueError, match="Unknown transform site"):
        transform_from_dict({"conjugate_pair": False})


def test_chart_map_round_trip():
    c = c_sign_map(-1)
    payload = chart_map_to_dict(c)
    assert payload == {"base": "cB", "antiholo": True, "matrix": [["0", "1"], ["-f@cB", "0"]]}
    assert chart_map_from_dict(payload) == c


def test_torus_divisor_decoding():
    points = {"p0": P0, "p1": P1}
    d = torus_divisor_from_dict({"p1": 1, "p0": -1}, points)
    assert d.degree == 0
    with pytest.raises(ValueError, match="Unknown point"):
        torus_divisor_from_dict({"q9": 1}, points)


@pytest.mark.parametrize(
    "label",
    [
        {"name": "x1", "orbit": "real", "component": "1"},
        {"name": "x1", "orbit": "real", "component": True},
        {"name": "p", "orbit": "pair", "mate": 7},
    ],
)
def test_divisor_label_types(label):
    with pytest.raises(ValueError, match="has the wrong type"):
        divisor_from_dict({"labels": [label], "terms": {}})
