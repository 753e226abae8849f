"""Command-line commands for RuledForge."""

from __future__ import annotations

from pathlib import Path
from typing import NoReturn

import click

from .classify import (
    Quintuple,
    allowability,
    enumerate_classes,
    normalize,
    rational_classes,
    realize,
    realize_decomposable,
    same_deformation_class,
    topological_type,
)
from .codec import (
    conjugacy_table_to_list,
    curve_type_to_dict,
    deformation_class_to_dict,
    quintuple_to_dict,
    rational_class_to_dict,
    recipe_to_dict,
)
from .config import AppConfig
from .curve import CurveType
from .errors import NonTerminationError, WitnessValidationError
from .report import Report, render_json, render_text
from .surface import classify_real_structures
from .validation import load_recipe, load_structure_request
from .verify import load_witness, run_verification

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2

json_option = click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")


def _emit(report: Report, as_json: bool) -> None:
    click.echo(render_json(report) if as_json else render_text(report), nl=False)


def _input_error(ctx: click.Context, exc: Exception) -> NoReturn:
    click.echo(f"Error: {exc}", err=True)
    ctx.exit(EXIT_INPUT)
    raise AssertionError("unreachable")


def _spin_text(spin: bool | None) -> str:
    return "" if spin is None else (" spin" if spin else " non-spin")


def build_commands() -> list[click.Command]:
    """Create the application's commands."""

    @click.command("check-type")
    @click.argument("t", type=int)
    @click.argument("k", type=int)
    @click.argument("g", type=int)
    @click.argument("mu", type=int)
    @click.argument("eps", type=int)
    @json_option
    @click.pass_context
    def check_type(ctx: click.Context, t: int, k: int, g: int, mu: int, eps: int, as_json: bool) -> None:
        """Report whether (t, k, g, mu, eps) is an allowable topological type."""

        q = Quintuple(t, k, g, mu, eps)
        ok, reason = allowability(q)
        line = f"{q} is allowable" if ok else f"{q} is not allowable: {reason}"
        report = Report("check-type", quintuple_to_dict(q), {"allowable": ok, "reason": reason}, lines=[line])
        _emit(report, as_json)
        ctx.exit(EXIT_OK if ok else EXIT_FALSE)

    @click.command("enumerate")
    @click.argument("g", type=int)
    @click.argument("mu", type=int)
    @click.argument("eps", type=int)
    @click.option("--rational", is_flag=True, help="Print the table for a rational base (g = 0).")
    @json_option
    @click.pass_context
    def enumerate_cmd(ctx: click.Context, g: int, mu: int, eps: int, rational: bool, as_json: bool) -> None:
        """List the deformation classes over curves of type (g, mu, eps)."""

        ct = CurveType(g, mu, eps)
        try:
            if rational:
                if not ct.is_valid or ct.g != 0:
                    raise ValueError(f"--rational needs a valid curve type with g = 0, got {ct}")
                entries = rational_classes()
                classes = [rational_class_to_dict(e) for e in entries]
                lines = [f"{len(entries)} deformation classes of real rational ruled surfaces"]
                for e in entries:
                    extra = "" if e.fibered else ", not fibered over a real structure on the base"
                    lines.append(f"  real part {e.real_part}{_spin_text(e.quotient_spin)}{extra}")
            else:
                found = enumerate_classes(ct)
                classes = [deformation_class_to_dict(c) for c in found]
                lines = [f"{len(found)} deformation classes over curve type {ct}"]
                lines += [f"  {c.q}{_spin_text(c.spin)}" for c in found]
        except (ValueError, OSError) as exc:
            _input_error(ctx, exc)
        report = Report("enumerate", curve_type_to_dict(ct), {"count": len(classes), "classes": classes}, lines=lines)
        _emit(report, as_json)

    @click.command("realize")
    @click.argument("t", type=int)
    @click.argument("k", type=int)
    @click.argument("g", type=int)
    @click.argument("mu", type=int)
    @click.argument("eps", type=int)
    @click.option("--spin/--no-spin", default=None, help="Quotient spin bit, required when mu = 0.")
    @click.option("--decomposable", is_flag=True, help="Realize with a direct-sum structure c_L + c_L0.")
    @json_option
    @click.pass_context
    def realize_cmd(
        ctx: click.Context,
        t: int,
        k: int,
        g: int,
        mu: int,
        eps: int,
        spin: bool | None,
        decomposable: bool,
        as_json: bool,
    ) -> None:
        """Build a surface recipe realizing an allowable topological type."""

        q = Quintuple(t, k, g, mu, eps)
        try:
            if decomposable:
                if spin is not None:
                    raise ValueError("--spin does not apply to direct-sum realizations")
                recipe = realize_decomposable(q)
            else:
                recipe = realize(q, spin)
            found = topological_type(recipe)
            normal = normalize(recipe)
        except (ValueError, OSError) as exc:
            _input_error(ctx, exc)
        result = {
            "recipe": recipe_to_dict(recipe),
            "topological_type": quintuple_to_dict(found),
            "normal_form": deformation_class_to_dict(normal),
        }
        lines = [
            f"tag {recipe.tag.value}, bundle {recipe.bundle.relation.value} of degree {recipe.bundle.degree}",
            f"{len(recipe.transforms)} elementary transformation(s)",
            f"topological type {found}{_spin_text(normal.spin)}",
        ]
        inputs = {**quintuple_to_dict(q), "spin": spin}
        _emit(Report("realize", inputs, result, lines=lines), as_json)

    @click.command("equiv")
    @click.argument("first", type=click.Path(path_type=Path))
    @click.argument("second", type=click.Path(path_type=Path))
    @json_option
    @click.pass_context
    def equiv(ctx: click.Context, first: Path, second: Path, as_json: bool) -> None:
        """Decide whether two recipes are deformation equivalent."""

        try:
            a, b = load_recipe(first), load_recipe(second)
            na, nb = normalize(a), normalize(b)
            same = same_deformation_class(a, b)
        except (ValueError, OSError) as exc:
            _input_error(ctx, exc)
        result = {
            "first": deformation_class_to_dict(na),
            "second": deformation_class_to_dict(nb),
            "equivalent": same,
        }
        lines = [
            f"{first.name}: {na.q}{_spin_text(na.spin)}",
            f"{second.name}: {nb.q}{_spin_text(nb.spin)}",
            "deformation equivalent" if same else "not deformation equivalent",
        ]
        _emit(Report("equiv", {"first": str(first), "second": str(second)}, result, lines=lines), as_json)
        ctx.exit(EXIT_OK if same else EXIT_FALSE)

    @click.command("classify-structures")
    @click.argument("path", type=click.Path(path_type=Path))
    @click.option("--witness", "witness_name", default=None, help="Conjugation witness fixture name.")
    @json_option
    @click.pass_context
    def classify_structures(ctx: click.Context, path: Path, witness_name: str | None, as_json: bool) -> None:
        """Conjugacy classes of real structures on P(L + L0) fibered over c_B."""

        cfg: AppConfig = ctx.obj
        try:
            ct, bundle = load_structure_request(path)
            witness = load_witness(cfg.fixtures_dir, witness_name) if witness_name else None
            table = classify_real_structures(bundle, ct, witness, cfg.rewrite_budget)
        except WitnessValidationError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(EXIT_FALSE)
        except (ValueError, OSError, NonTerminationError) as exc:
            _input_error(ctx, exc)
        classes = conjugacy_table_to_list(table)
        lines = [f"{len(classes)} conjugacy class(es) over curve type {ct}"]
        lines += [f"  {{{', '.join(c['class'])}}} {c['status']}" for c in classes]
        if not classes:
            lines.append("  no real structure fibered over c_B")
        inputs = {"path": str(path), "witness": witness_name}
        _emit(Report("classify-structures", inputs, {"classes": classes}, lines=lines), as_json)

    @click.command("verify-paper")
    @click.option("--identity", default=None, help="Run a single named identity.")
    @click.option("--flip-sign", is_flag=True, help="Run the sign-flipped negative controls.")
    @json_option
    @click.pass_context
    def verify_identities(ctx: click.Context, identity: str | None, flip_sign: bool, as_json: bool) -> None:
        """Check the chart-map identities and the elliptic divisor-class facts."""

        cfg: AppConfig = ctx.obj
        try:
            checks = run_verification(cfg, identity, flip_sign)
        except (ValueError, OSError, NonTerminationError) as exc:
            _input_error(ctx, exc)
        report = Report("verify-paper", {"identity": identity, "flip_sign": flip_sign}, checks=checks)
        report.result = {"passed": report.passed_count, "total": len(checks)}
        _emit(report, as_json)
        ctx.exit(EXIT_OK if report.ok else EXIT_FALSE)

    return [check_type, enumerate_cmd, realize_cmd, equiv, classify_structures, verify_identities]
