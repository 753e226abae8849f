"""JSON encoding and decoding for RuledForge values.

Encoders emit keys in a fixed order so that decode followed by encode is
byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .bundle import BundleClass, DivisorSymbol, Orbit, PointLabel, Relation
from .classify import (
    ConjugatePair,
    DeformationClass,
    Quintuple,
    RationalClass,
    RealPoint,
    SurfaceRecipe,
    TransformSite,
)
from .curve import CurveType, EmptyRealPart, JacComponent, JacFlag, Partition, PartitionComponent
from .elliptic import CoverPoint, TorusDivisor, TorusPoint
from .surface import ConjugacyTable, StructureTag
from .symbolic import ChartMap, GeneratorKind, Hypothesis, parse_hypothesis


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _field(data: Mapping[str, Any], key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(data, Mapping):
        raise ValueError(f"{where} must be a JSON object")
    if key not in data:
        raise ValueError(f"{where} is missing field {key!r}")
    value = data[key]
    # bool is an int subclass; never accept it where an integer is meant
    if isinstance(value, bool) and bool not in (kind if isinstance(kind, tuple) else (kind,)):
        raise ValueError(f"{where}.{key} has the wrong type")
    if not isinstance(value, kind):
        raise ValueError(f"{where}.{key} has the wrong type")
    return value


def curve_type_to_dict(ct: CurveType) -> dict[str, int]:
    return {"g": ct.g, "mu": ct.mu, "eps": ct.eps}


def curve_type_from_dict(data: Mapping[str, Any]) -> CurveType:
    ct = CurveType(
        _field(data, "g", int, "curve"),
        _field(data, "mu", int, "curve"),
        _field(data, "eps", int, "curve"),
    )
    if not ct.is_valid:
        raise ValueError(f"Invalid curve type {ct}")
    return ct


def jac_component_to_dict(component: JacComponent) -> dict[str, Any]:
    if isinstance(component, PartitionComponent):
        return {"partition": component.partition.sorted_side()}
    return {"empty_real_part": component.flag.value}


def jac_component_from_dict(data: Mapping[str, Any], ct: CurveType) -> JacComponent:
    if isinstance(data, Mapping) and "partition" in data:
        side = _field(data, "partition", list, "jac_component")
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in side):
            raise ValueError("jac_component.partition must list component indices")
        return PartitionComponent(Partition.from_side(ct.mu, set(side)))
    flag = _field(data, "empty_real_part", str, "jac_component")
    try:
        return EmptyRealPart(JacFlag(flag))
    except ValueError:
        raise ValueError(f"Unknown Jacobian flag {flag!r}") from None


def bundle_to_dict(b: BundleClass) -> dict[str, Any]:
    return {
        "degree": b.degree,
        "relation": b.relation.value,
        "obstruction": b.obstruction,
        "jac_component": None if b.jac_component is None else jac_component_to_dict(b.jac_component),
    }


def bundle_from_dict(data: Mapping[str, Any], ct: CurveType) -> BundleClass:
    relation_text = _field(data, "relation", str, "bundle")
    try:
        relation = Relation(relation_text)
    except ValueError:
        raise ValueError(f"Unknown bundle relation {relation_text!r}") from None
    obstruction = data.get("obstruction")
    if obstruction is not None and (isinstance(obstruction, bool) or obstruction not in (1, -1)):
        raise ValueError(f"bundle.obstruction must be 1, -1 or null, got {obstruction!r}")
    raw_component = data.get("jac_component")
    component = None if raw_component is None else jac_component_from_dict(raw_component, ct)
    return BundleClass(_field(data, "degree", int, "bundle"), relation, obstruction, component)


def divisor_to_dict(d: DivisorSymbol) -> dict[str, Any]:
    labels = []
    for label in sorted(d.labels, key=lambda item: item.name):
        entry: dict[str, Any] = {"name": label.name, "orbit": label.orbit.value}
        if label.orbit is Orbit.REAL:
            entry["component"] = label.component
        else:
            entry["mate"] = label.mate
        labels.append(entry)
    return {"labels": labels, "terms": {name: c for name, c in d.terms}}


def divisor_from_dict(data: Mapping[str, Any]) -> DivisorSymbol:
    labels = []
    for entry in _field(data, "labels", list, "divisor"):
        orbit = Orbit(_field(entry, "orbit", str, "divisor.labels[]"))
        labels.append(
            PointLabel(
                _field(entry, "name", str, "divisor.labels[]"),
                orbit,
                component=_field(entry, "component", int, "divisor.labels[]") if "component" in entry else None,
                mate=_field(entry, "mate", str, "divisor.labels[]") if "mate" in entry else None,
            )
        )
    terms = _field(data, "terms", dict, "divisor")
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in terms.values()):
        raise ValueError("divisor.terms must map labels to integers")
    return DivisorSymbol.build(labels, terms)


def transform_to_dict(site: TransformSite) -> dict[str, Any]:
    if isinstance(site, RealPoint):
        return {"real_point": site.component}
    return {"conjugate_pair": True}


def transform_from_dict(data: Mapping[str, Any]) -> TransformSite:
    if isinstance(data, Mapping) and "real_point" in data:
        return RealPoint(_field(data, "real_point", int, "transform"))
    if isinstance(data, Mapping) and data.get("conjugate_pair") is True:
        return ConjugatePair()
    raise ValueError(f"Unknown transform site {data!r}")


def recipe_to_dict(r: SurfaceRecipe) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "curve": curve_type_to_dict(r.curve),
        "bundle": bundle_to_dict(r.bundle),
        "tag": r.tag.value,
        "transforms": [transform_to_dict(site) for site in r.transforms],
    }
    if r.divisor is not None:
        payload["divisor"] = divisor_to_dict(r.divisor)
    return payload


def recipe_from_dict(data: Mapping[str, Any]) -> SurfaceRecipe:
    ct = curve_type_from_dict(_field(data, "curve", dict, "recipe"))
    bundle = bundle_from_dict(_field(data, "bundle", dict, "recipe"), ct)
    tag_text = _field(data, "tag", str, "recipe")
    try:
        tag = StructureTag(tag_text)
    except ValueError:
        raise ValueError(f"Unknown real-structure tag {tag_text!r}") from None
    transforms = tuple(transform_from_dict(item) for item in data.get("transforms", []))
    raw_divisor = data.get("divisor")
    divisor = None if raw_divisor is None else divisor_from_dict(raw_divisor)
    return SurfaceRecipe(ct, bundle, tag, transforms, divisor)


def quintuple_to_dict(q: Quintuple) -> dict[str, int]:
    return {"t": q.t, "k": q.k, "g": q.g, "mu": q.mu, "eps": q.eps}


def quintuple_from_dict(data: Mapping[str, Any]) -> Quintuple:
    return Quintuple(*(_field(data, key, int, "quintuple") for key in ("t", "k", "g", "mu", "eps")))


def deformation_class_to_dict(c: DeformationClass) -> dict[str, Any]:
    return {**quintuple_to_dict(c.q), "spin": c.spin}


def deformation_class_from_dict(data: Mapping[str, Any]) -> DeformationClass:
    spin = data.get("spin")
    if spin is not None and not isinstance(spin, bool):
        raise ValueError("deformation class spin must be true, false or null")
    return DeformationClass(quintuple_from_dict(data), spin)


def rational_class_to_dict(c: RationalClass) -> dict[str, Any]:
    return {"real_part": c.real_part, "fibered": c.fibered, "quotient_spin": c.quotient_spin}


def conjugacy_table_to_list(table: ConjugacyTable) -> list[dict[str, Any]]:
    return [{"class": [tag.value for tag in cls.sorted_tags()], "status": cls.status} for cls in table.classes]


def chart_map_to_dict(m: ChartMap) -> dict[str, Any]:
    return {"base": str(m.base), "antiholo": m.antiholo, "matrix": m.rows()}


def chart_map_from_dict(data: Mapping[str, Any], kinds: Mapping[str, GeneratorKind] | None = None) -> ChartMap:
    return ChartMap.build(
        _field(data, "base", str, "chart map"),
        _field(data, "antiholo", bool, "chart map"),
        _field(data, "matrix", list, "chart map"),
        kinds,
    )


def kinds_from_dict(data: Mapping[str, str]) -> dict[str, GeneratorKind]:
    try:
        return {name: GeneratorKind(kind) for name, kind in data.items()}
    except ValueError as exc:
        raise ValueError(f"Unknown generator kind: {exc}") from None


def hypotheses_from_list(items: list[str], kinds: Mapping[str, GeneratorKind] | None = None) -> tuple[Hypothesis, ...]:
    return tuple(parse_hypothesis(text, kinds) for text in items)


def torus_point_to_dict(p: TorusPoint) -> dict[str, str]:
    return {"x": str(p.x), "y": str(p.y)}


def torus_point_from_dict(data: Mapping[str, Any]) -> TorusPoint:
    try:
        return TorusPoint(
            Fraction(_field(data, "x", str, "point")),
            Fraction(_field(data, "y", str, "point")),
        )
    except (ZeroDivisionError, ValueError) as exc:
        raise ValueError(f"Invalid torus point {data!r}: {exc}") from None


def torus_divisor_from_dict(data: Mapping[str, Any], points: Mapping[str, TorusPoint]) -> TorusDivisor:
    """Decode {"p1": 1, "p0": -1} against named points."""

    terms = []
    for name, n in data.items():
        if name not in points:
            raise ValueError(f"Unknown point {name!r}")
        terms.append((points[name], n))
    return TorusDivisor.of(terms)


def cover_divisor_to_dict(d: Mapping[CoverPoint, int]) -> list[dict[str, Any]]:
    return [
        {"point": torus_point_to_dict(p.base), "sheet": p.sheet, "n": n}
        for p, n in sorted(d.items(), key=lambda item: (item[0].base, -1 if item[0].sheet is None else item[0].sheet))
    ]
