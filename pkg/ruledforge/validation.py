"""Input file validation and loading helpers."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .bundle import BundleClass, require_consistent
from .classify import SurfaceRecipe, recipe_validity
from .codec import bundle_from_dict, curve_type_from_dict, recipe_from_dict
from .curve import CurveType


def _read_json(path: Path) -> tuple[Any, str]:
    if path.suffix.lower() != ".json":
        return None, "Only .json files are accepted"
    if not path.is_file():
        return None, f"File not found: {path}"
    try:
        return json.loads(path.read_text(encoding="utf-8")), ""
    except (OSError, UnicodeDecodeError) as exc:
        return None, f"Cannot read {path.name}: {exc}"
    except json.JSONDecodeError as exc:
        return None, f"{path.name} is not valid JSON: {exc.msg} (line {exc.lineno})"


def is_valid_recipe_file(path: Path) -> tuple[bool, str]:
    """Validate extension, JSON syntax, schema and recipe consistency."""

    data, reason = _read_json(path)
    if reason:
        return False, reason
    try:
        recipe = recipe_from_dict(data)
        ok, reason = recipe_validity(recipe)
    except (ValueError, TypeError) as exc:
        return False, f"{path.name}: {exc}"
    if not ok:
        return False, f"{path.name}: {reason}"
    return True, ""


def load_recipe(path: Path) -> SurfaceRecipe:
    """Load a validated surface recipe from disk."""

    valid, reason = is_valid_recipe_file(path)
    if not valid:
        raise ValueError(reason)
    data, _ = _read_json(path)
    return recipe_from_dict(data)


def load_structure_request(path: Path) -> tuple[CurveType, BundleClass]:
    """Load the {"curve": ..., "bundle": ...} input of a structure classification."""

    data, reason = _read_json(path)
    if reason:
        raise ValueError(reason)
    if not isinstance(data, dict) or "curve" not in data or "bundle" not in data:
        raise ValueError(f"{path.name}: expected an object with 'curve' and 'bundle'")
    try:
        ct = curve_type_from_dict(data["curve"])
        bundle = bundle_from_dict(data["bundle"], ct)
        require_consistent(bundle, ct)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"{path.name}: {exc}") from None
    return ct, bundle
