"""Verification suites for the bundled chart-map identities and the elliptic example."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .codec import (
    bundle_from_dict,
    chart_map_from_dict,
    curve_type_from_dict,
    hypotheses_from_list,
    kinds_from_dict,
    torus_divisor_from_dict,
    torus_point_from_dict,
)
from .config import DEFAULT_REWRITE_BUDGET, AppConfig
from .elliptic import (
    C_B,
    PHI,
    ClassComponent,
    CoverPoint,
    TorusPoint,
    apply_map,
    corspin_cover,
    double_cover_genus,
    is_principal,
    jac_class,
    jac_component_of_class,
    jac_involution,
    real_points,
)
from .errors import NonTerminationError, WitnessValidationError, ZeroMapError
from .report import Check
from .surface import Conjugacy, ConjugationWitness, cplus_cminus_conjugate
from .symbolic import DEFAULT_KINDS, GeneratorKind, verify_conjugation, verify_involution, verify_step2_normalization

logger = logging.getLogger(__name__)

IDENTITIES_FILE = "identities.json"


def read_fixture(fixtures_dir: Path, filename: str) -> dict[str, Any]:
    path = fixtures_dir / filename
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValueError(f"Fixture not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"Fixture {path.name} is not valid JSON: {exc.msg}") from None


def load_identities(fixtures_dir: Path) -> tuple[dict[str, GeneratorKind], list[dict[str, Any]]]:
    data = read_fixture(fixtures_dir, IDENTITIES_FILE)
    kinds = kinds_from_dict(data["generators"]) if "generators" in data else dict(DEFAULT_KINDS)
    return kinds, list(data.get("identities", []))


def witness_from_dict(raw: dict[str, Any], default_name: str) -> ConjugationWitness:
    kinds = kinds_from_dict(raw["generators"]) if "generators" in raw else None
    try:
        return ConjugationWitness(
            raw["case"],
            chart_map_from_dict(raw["phi"], kinds),
            hypotheses_from_list(raw.get("hypotheses", []), kinds),
            raw.get("name", default_name),
        )
    except KeyError as exc:
        raise ValueError(f"Witness {default_name!r} is missing field {exc}") from None


def load_witness(fixtures_dir: Path, name: str) -> ConjugationWitness:
    """Load the conjugation witness stored in <name>.json."""

    raw = read_fixture(fixtures_dir, f"{name}.json").get("witness")
    if raw is None:
        raise ValueError(f"Fixture {name}.json holds no witness")
    return witness_from_dict(raw, name)


def _holds(entry: dict[str, Any], kinds: dict[str, GeneratorKind], flip_sign: bool, budget: int) -> tuple[bool, str]:
    kind = entry["kind"]
    if kind == "normalization":
        outcomes = [
            verify_step2_normalization(case["a"], case["d"], flip_sign=flip_sign, budget=budget)
            for case in entry["cases"]
        ]
        holds = any(outcomes) if flip_sign else all(outcomes)
        return holds, f"{sum(outcomes)}/{len(outcomes)} cases verify"

    hyps_key = "flipped" if flip_sign and "flipped" in entry else "hypotheses"
    hyps = hypotheses_from_list(entry.get(hyps_key, []), kinds)
    if kind == "involution":
        map_key = "control_map" if flip_sign and "flipped" not in entry else "map"
        holds = verify_involution(chart_map_from_dict(entry[map_key], kinds), hyps, budget)
        return holds, f"{map_key} squared under {len(hyps)} relation(s)"
    if kind == "conjugation":
        holds = verify_conjugation(
            chart_map_from_dict(entry["phi"], kinds),
            chart_map_from_dict(entry["cminus"], kinds),
            chart_map_from_dict(entry["cplus"], kinds),
            hyps,
            budget,
        )
        return holds, f"conjugation under {len(hyps)} relation(s)"
    raise ValueError(f"Unknown identity kind {kind!r} in {entry.get('name')}")


def check_identity(
    entry: dict[str, Any],
    kinds: dict[str, GeneratorKind],
    *,
    flip_sign: bool = False,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> Check:
    """Run one identity; with flip_sign the check passes when verification fails."""

    name = entry["name"] + (" (negative control)" if flip_sign else "")
    try:
        holds, detail = _holds(entry, kinds, flip_sign, budget)
    except (NonTerminationError, ZeroMapError) as exc:
        logger.warning("identity %s did not complete: %s", name, exc)
        return Check(name, False, str(exc))
    verdict = "holds" if holds else "fails"
    return Check(name, holds != flip_sign, f"{verdict}: {detail}")


def _check(name: str, predicate: Callable[[], bool], detail: str = "") -> Check:
    passed = bool(predicate())
    if not passed:
        logger.warning("check %s failed", name)
    return Check(name, passed, detail)


def run_corspin_suite(data: dict[str, Any], budget: int = DEFAULT_REWRITE_BUDGET) -> list[Check]:
    """Divisor-class, genus and witness checks on the genus-one example without real points."""

    points = {name: torus_point_from_dict(p) for name, p in data["points"].items()}
    d = torus_divisor_from_dict(data["divisor"], points)
    grid = int(data.get("grid", 24))
    max_k = int(data.get("max_cover_index", 10))

    def commute() -> bool:
        for i in range(grid):
            for j in range(grid):
                p = TorusPoint(Fraction(i, grid), Fraction(j, grid))
                if apply_map(C_B, apply_map(PHI, p)) != apply_map(PHI, apply_map(C_B, p)):
                    return False
        return True

    cover = corspin_cover(1)
    expected_pullback = {CoverPoint(points["p1"]): 2, CoverPoint(points["p0"]): -2}
    checks = [
        _check("real-part-empty", lambda: real_points(C_B).kind == "empty", "c_B has no fixed points"),
        _check(
            "jacobian-two-components",
            lambda: real_points(jac_involution(C_B)).component_count == 2,
            "fixed circles y = 0 and y = 1/2",
        ),
        _check("d-plus-conjugate-principal", lambda: is_principal(d + d.image(C_B)), "D + c_B(D)"),
        _check("phi-d-minus-d-principal", lambda: is_principal(d.image(PHI) - d), "phi(D) - D"),
        _check("two-d-principal", lambda: is_principal(2 * d), "2D"),
        _check("d-not-principal", lambda: not is_principal(d), "D"),
        _check(
            "d-nontrivial-component",
            lambda: jac_component_of_class(jac_class(d)) is ClassComponent.NONTRIVIAL,
            f"class {jac_class(d)}",
        ),
        _check("cb-phi-commute", commute, f"{grid}x{grid} rational grid"),
        _check(
            "cover-genus",
            lambda: all(
                double_cover_genus(1, 4 * k) == 2 * k + 1 == corspin_cover(k).genus for k in range(1, max_k + 1)
            ),
            f"genus 2k+1 for k <= {max_k}",
        ),
        _check(
            "branch-set-invariant",
            lambda: all(
                corspin_cover(k).is_invariant_under(C_B) and corspin_cover(k).is_invariant_under(PHI)
                for k in range(1, max_k + 1)
            ),
            f"k <= {max_k}",
        ),
        _check("pullback-doubles", lambda: cover.pullback(d) == expected_pullback, "2p1' - 2p0'"),
    ]

    raw_witness = data.get("witness")
    if raw_witness is not None:
        ct = curve_type_from_dict(data["curve"])
        bundle = bundle_from_dict(data["bundle"], ct)
        witness = witness_from_dict(raw_witness, "corspin")
        try:
            answer = cplus_cminus_conjugate(bundle, ct, witness, budget)
            checks.append(Check("witness-conjugates", answer is Conjugacy.CONJUGATE, answer.value))
        except (WitnessValidationError, NonTerminationError) as exc:
            checks.append(Check("witness-conjugates", False, str(exc)))
    return checks


def run_verification(cfg: AppConfig, identity: str | None = None, flip_sign: bool = False) -> list[Check]:
    """Run the full suite, one identity, or the negative controls only."""

    kinds, entries = load_identities(cfg.fixtures_dir)
    budget = cfg.rewrite_budget
    if identity is not None:
        entry = next((e for e in entries if e["name"] == identity), None)
        if entry is None:
            known = ", ".join(e["name"] for e in entries)
            raise ValueError(f"Unknown identity {identity!r}; known identities: {known}")
        return [check_identity(entry, kinds, flip_sign=flip_sign, budget=budget)]
    if flip_sign:
        return [check_identity(e, kinds, flip_sign=True, budget=budget) for e in entries]

    logger.info("running %d identities with negative controls", len(entries))
    checks = [check_identity(e, kinds, budget=budget) for e in entries]
    checks += [check_identity(e, kinds, flip_sign=True, budget=budget) for e in entries]
    logger.info("running elliptic checks")
    checks += run_corspin_suite(read_fixture(cfg.fixtures_dir, "corspin.json"), budget)
    return checks
