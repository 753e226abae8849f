from __future__ import annotations

import json

import pytest

from ruledforge.classify import Quintuple, realize
from ruledforge.codec import dump_json, recipe_to_dict
from ruledforge.validation import is_valid_recipe_file, load_recipe, load_structure_request


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_valid_recipe_file(tmp_path):
    recipe = realize(Quintuple(1, 0, 2, 2, 0))
    path = _write(tmp_path, "surface.json", dump_json(recipe_to_dict(recipe)))
    assert is_valid_recipe_file(path) == (True, "")
    assert load_recipe(path) == recipe


def test_rejects_wrong_extension(tmp_path):
    path = _write(tmp_path, "surface.txt", "{}")
    assert is_valid_recipe_file(path) == (False, "Only .json files are accepted")


def test_rejects_missing_file(tmp_path):
    ok, reason = is_valid_recipe_file(tmp_path / "absent.json")
    assert not ok and reason.startswith("File not found")


def test_rejects_malformed_json(tmp_path):
    path = _write(tmp_path, "broken.json", "{\"curve\": ")
    ok, reason = is_valid_recipe_file(path)
    assert not ok and "is not valid JSON" in reason
    with pytest.raises(ValueError, match="is not valid JSON"):
        load_recipe(path)


def test_rejects_inconsistent_recipe(tmp_path):
    payload = recipe_to_dict(realize(Quintuple(1, 0, 2, 2, 0)))
    payload["transforms"] = [{"real_point": 2}]
    path = _write(tmp_path, "bad.json", json.dumps(payload))
    ok, reason = is_valid_recipe_file(path)
    assert not ok and reason == "bad.json: component 2 carries no real surface component"


def test_structure_request(tmp_path):
    body = {
        "curve": {"g": 1, "mu": 0, "eps": 0},
        "bundle": {"degree": 0, "relation": "both", "obstruction": -1, "jac_component": {"empty_real_part": "nontrivial"}},
    }
    ct, bundle = load_structure_request(_write(tmp_path, "corspin.json", json.dumps(body)))
    assert (ct.g, ct.mu, bundle.obstruction) == (1, 0, -1)

    body["bundle"]["obstruction"] = None
    with pytest.raises(ValueError, match="obstruction sign is required"):
        load_structure_request(_write(tmp_path, "missing_sign.json", json.dumps(body)))
    with pytest.raises(ValueError, match="'curve' and 'bundle'"):
        load_structure_request(_write(tmp_path, "empty.json", "{}"))
