"""Command-line front end.

Commands: ``list``, ``show <id>``, ``estimate <id>``, ``solve``,
``thermal <subcommand>``, ``check-all``.  Global flags select the value set
(``--set paper`` is the default so the regression table matches the catalog's
documented arithmetic out of the box), the output format, the catalog file,
and an optional tolerance override.

Exit codes: 0 success, 1 estimation/solve failure, 2 usage or I/O error.
JSON output is key-sorted and byte-stable across identical invocations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import click

from .catalog import (
    EstimateReport,
    ValidationError,
    check_all,
    evaluate,
    load_catalog,
    summarize,
)
from .constants import Registry, UnknownConstant, builtin_registry
from .dimensions import (
    LENGTH,
    MASS,
    NAMED_DIMENSIONS,
    TEMPERATURE,
    TIME,
    DimensionMismatch,
    ParseError,
    Quantity,
    display_quantity,
    parse_quantity,
    require_dim,
)
from .estimator import TremorBreakdown, keplerian_check
from .solver import (
    Inconsistent,
    MonomialProblem,
    Underdetermined,
    format_exponents,
    solve,
)
from . import thermal as thermal_ops

# Bare dimension symbols accepted as solver generators alongside registry
# constant names (e.g. the total mass M and radius R of a system).
SOLVE_SYMBOLS = {
    "M": NAMED_DIMENSIONS["mass"],
    "m": NAMED_DIMENSIONS["mass"],
    "R": NAMED_DIMENSIONS["length"],
    "r": NAMED_DIMENSIONS["length"],
    "L": NAMED_DIMENSIONS["length"],
    "t": NAMED_DIMENSIONS["time"],
    "v": NAMED_DIMENSIONS["velocity"],
    "F": NAMED_DIMENSIONS["force"],
    "E": NAMED_DIMENSIONS["energy"],
    "theta": NAMED_DIMENSIONS["temperature"],
}


@dataclass
class CliConfig:
    value_set: str = "paper"
    fmt: str = "text"
    catalog_path: Path | None = None
    tolerance: float | None = None

    @property
    def registry(self) -> Registry:
        return builtin_registry()


@click.group()
@click.option(
    "--set",
    "value_set",
    type=click.Choice(["paper", "modern"]),
    default="paper",
    show_default=True,
    help="Constant value set to evaluate with.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output format.",
)
@click.option(
    "--catalog",
    "catalog_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Catalog TOML file (default: built-in catalog).",
)
@click.option(
    "--tolerance",
    type=float,
    default=None,
    help="Override every entry's pass tolerance, in decades.",
)
@click.version_option()
@click.pass_context
def main(ctx, value_set, fmt, catalog_path, tolerance):
    """Order-of-magnitude estimates of the action per constituent of
    stable bound systems."""
    ctx.obj = CliConfig(value_set, fmt, catalog_path, tolerance)


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _load(cfg: CliConfig):
    try:
        return load_catalog(cfg.catalog_path)
    except (OSError, ValidationError, ParseError) as exc:
        _fail(str(exc), 2)


def _quantity_json(q: Quantity) -> dict:
    from .dimensions import render_quantity

    return {
        "value": render_quantity(q, digits=6),
        "dim": str(q.dim),
        "log10": round(q.log10_magnitude, 9),
    }


def _breakdown_json(b: TremorBreakdown) -> dict:
    payload = {"count_n": b.count_n, "keplerian_log10": round(keplerian_check(b), 12)}
    for name in (
        "constituent_mass",
        "radius",
        "force",
        "work",
        "velocity",
        "global_time",
        "fluctuation_time",
        "energy_per_particle",
        "total_energy",
        "total_action",
        "action_per_particle",
        "mean_free_path",
    ):
        payload[name] = _quantity_json(getattr(b, name))
    return payload


def _report_json(r: EstimateReport) -> dict:
    payload = {
        "id": r.system_id,
        "description": r.description,
        "cite": r.citation,
        "value_set": r.value_set,
        "verdict": r.verdict,
        "alpha": _quantity_json(r.alpha) if r.alpha is not None else None,
        "decades_from_h": (
            round(r.decades_from_h, 9) if r.decades_from_h is not None else None
        ),
        "measured": round(r.measured, 9) if r.measured is not None else None,
        "expected": (
            {
                "decades": r.expectation.decades,
                "tol": r.expectation.tol,
                "measure": r.expectation.measure,
                "informational": r.expectation.informational,
            }
            if r.expectation is not None
            else None
        ),
        "thermal": {k: _quantity_json(v) for k, v in r.thermal_outputs.items()},
        "notes": list(r.notes),
        "breakdown": _breakdown_json(r.breakdown) if r.breakdown else None,
    }
    return payload


def _print_report_text(r: EstimateReport) -> None:
    click.echo(f"{r.system_id}  [{r.verdict}]  ({r.value_set} set)")
    click.echo(f"  {r.description}")
    click.echo(f"  cite: {r.citation}")
    if r.alpha is not None:
        click.echo(f"  alpha = {display_quantity(r.alpha, 'J s')}")
        click.echo(f"  decades from h = {r.decades_from_h:+.3f}")
    for name, q in r.thermal_outputs.items():
        click.echo(f"  {name} = {display_quantity(q)}")
    if r.expectation is not None:
        e = r.expectation
        kind = "informational" if e.informational else "gate"
        click.echo(
            f"  expected {e.measure} = {e.decades:+.2f} +/- {e.tol:.2f} ({kind}); "
            f"measured = {r.measured:+.3f}"
        )
    if r.breakdown is not None:
        b = r.breakdown
        click.echo(f"  breakdown (n = {b.count_n:g}):")
        for name in (
            "force",
            "work",
            "velocity",
            "global_time",
            "fluctuation_time",
            "energy_per_particle",
            "total_energy",
            "total_action",
            "mean_free_path",
        ):
            click.echo(f"    {name:20s} {display_quantity(getattr(b, name))}")
    for note in r.notes:
        click.echo(f"  note: {note}")


@main.command("list")
@click.pass_obj
def cmd_list(cfg: CliConfig):
    """List catalog entries."""
    specs = _load(cfg)
    if cfg.fmt == "json":
        _echo_json(
            [
                {"id": s.id, "description": s.description, "cite": s.citation}
                for s in specs
            ]
        )
        return
    for s in specs:
        click.echo(f"{s.id:24s} {s.description}  [{s.citation}]")


@main.command("show")
@click.argument("system_id")
@click.pass_obj
def cmd_show(cfg: CliConfig, system_id: str):
    """Show one catalog entry without evaluating it."""
    specs = _load(cfg)
    by_id = {s.id: s for s in specs}
    if system_id not in by_id:
        _fail(f"unknown system id {system_id!r}", 2)
    s = by_id[system_id]
    if cfg.fmt == "json":
        payload = {
            "id": s.id,
            "description": s.description,
            "cite": s.citation,
            "mass": s.constituent_mass,
            "radius": s.radius,
            "n": s.count_n,
            "force": (
                {
                    "constants": {
                        k: str(v) for k, v in s.force.constant_exponents.items()
                    },
                    "r_exp": str(s.force.radius_exponent),
                }
                if s.force
                else None
            ),
            "thermal": (
                {
                    "temperature": s.thermal.temperature,
                    "global_time": s.thermal.global_time,
                    "outputs": list(s.thermal.outputs),
                }
                if s.thermal
                else None
            ),
            "notes": list(s.notes),
        }
        _echo_json(payload)
        return
    click.echo(f"{s.id}: {s.description}")
    click.echo(f"  cite: {s.citation}")
    count = f"{s.count_n:g}" if s.count_n is not None else "-"
    click.echo(f"  mass = {s.constituent_mass}, radius = {s.radius}, n = {count}")
    if s.force is not None:
        click.echo(
            f"  force = {format_exponents(s.force.constant_exponents)} "
            f"* R^({s.force.radius_exponent})"
        )
    if s.thermal is not None:
        click.echo(
            f"  thermal: temperature = {s.thermal.temperature}, "
            f"global_time = {s.thermal.global_time}, "
            f"outputs = {', '.join(s.thermal.outputs)}"
        )
    for note in s.notes:
        click.echo(f"  note: {note}")


@main.command("estimate")
@click.argument("system_id")
@click.pass_obj
def cmd_estimate(cfg: CliConfig, system_id: str):
    """Evaluate one catalog entry and print its report."""
    specs = _load(cfg)
    by_id = {s.id: s for s in specs}
    if system_id not in by_id:
        _fail(f"unknown system id {system_id!r}", 2)
    report = evaluate(
        by_id[system_id], cfg.value_set, cfg.registry, cfg.tolerance
    )
    if cfg.fmt == "json":
        _echo_json(_report_json(report))
    else:
        _print_report_text(report)
    raise SystemExit(1 if report.verdict == "fail" else 0)


@main.command("check-all")
@click.pass_obj
def cmd_check_all(cfg: CliConfig):
    """Evaluate every catalog entry and print the regression table."""
    specs = _load(cfg)
    reports = check_all(specs, cfg.value_set, cfg.tolerance, cfg.registry)
    counts = summarize(reports)
    if cfg.fmt == "json":
        _echo_json(
            {
                "value_set": cfg.value_set,
                "tolerance_override": cfg.tolerance,
                "summary": counts,
                "reports": [_report_json(r) for r in reports],
            }
        )
    else:
        click.echo(
            f"{'id':24s} {'measure':>9s} {'target':>14s} {'verdict':13s} notes"
        )
        for r in reports:
            measured = f"{r.measured:+.3f}" if r.measured is not None else "-"
            if r.expectation is not None:
                target = f"{r.expectation.decades:+.1f}+/-{r.expectation.tol:.1f}"
            else:
                target = "-"
            flag = f" ({len(r.notes)} note{'s' if len(r.notes) != 1 else ''})" if r.notes else ""
            click.echo(
                f"{r.system_id:24s} {measured:>9s} {target:>14s} {r.verdict:13s}{flag}"
            )
        click.echo(
            f"{counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['informational']} informational ({cfg.value_set} set)"
        )
    raise SystemExit(1 if counts["fail"] else 0)


def _generator_dim(name: str, registry: Registry):
    if name in registry:
        return registry.dim(name)
    if name in SOLVE_SYMBOLS:
        return SOLVE_SYMBOLS[name]
    raise click.UsageError(
        f"unknown generator {name!r}: not a registry constant or a bare "
        f"dimension symbol ({', '.join(sorted(SOLVE_SYMBOLS))})"
    )


@main.command("solve")
@click.option("--target", required=True, help="Target dimension, e.g. action, force.")
@click.option(
    "--gen",
    "generators",
    required=True,
    help="Comma-separated generator names (registry constants or M, m, R, ...).",
)
@click.option(
    "--fix",
    "fixes",
    multiple=True,
    help="Fix a generator exponent, e.g. --fix c=-1 (repeatable).",
)
@click.pass_obj
def cmd_solve(cfg: CliConfig, target: str, generators: str, fixes):
    """Find the monomial in the generators with the target dimension."""
    if target not in NAMED_DIMENSIONS:
        raise click.UsageError(
            f"unknown target {target!r}; expected one of "
            + ", ".join(sorted(NAMED_DIMENSIONS))
        )
    registry = cfg.registry
    names = [g.strip() for g in generators.split(",") if g.strip()]
    gens = tuple((name, _generator_dim(name, registry)) for name in names)
    fixed = []
    for fx in fixes:
        name, _, value = fx.partition("=")
        if not value or name not in names:
            raise click.UsageError(f"bad --fix {fx!r}; expected name=rational")
        try:
            fixed.append((name, Fraction(value)))
        except (ValueError, ZeroDivisionError):
            raise click.UsageError(f"bad rational in --fix {fx!r}")
    try:
        problem = MonomialProblem(
            generators=gens, target=NAMED_DIMENSIONS[target], fixed=tuple(fixed)
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        solution = solve(problem)
    except Underdetermined as exc:
        if cfg.fmt == "json":
            _echo_json(
                {
                    "status": "underdetermined",
                    "nullspace": [
                        {k: _frac_str(v) for k, v in vec.items()}
                        for vec in exc.nullspace
                    ],
                }
            )
        else:
            click.echo("underdetermined; nullspace basis:")
            for vec in exc.nullspace:
                click.echo(f"  {_display_monomial(vec)}")
        raise SystemExit(1)
    except Inconsistent as exc:
        if cfg.fmt == "json":
            _echo_json({"status": "inconsistent", "detail": str(exc)})
        else:
            click.echo(f"inconsistent: {exc}")
        raise SystemExit(1)
    if cfg.fmt == "json":
        _echo_json(
            {
                "status": "ok",
                "exponents": {
                    k: _frac_str(v) for k, v in solution.exponents.items()
                },
            }
        )
    else:
        click.echo(_display_monomial(solution.exponents))
    raise SystemExit(0)


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _display_monomial(exponents) -> str:
    # e2 is the electromagnetic generator; print it as e with doubled exponent.
    shown = {}
    for name, exp in exponents.items():
        if name == "e2":
            shown["e"] = exp * 2
        else:
            shown[name] = exp
    return format_exponents(shown)


def _resolve_arg(cfg: CliConfig, text: str, dim, what: str) -> Quantity:
    from .catalog import resolve_quantity

    try:
        q = resolve_quantity(text, cfg.value_set, cfg.registry)
        require_dim(q, dim, what)
        return q
    except (ParseError, DimensionMismatch, UnknownConstant) as exc:
        raise click.UsageError(str(exc))


def _emit_quantity(cfg: CliConfig, q: Quantity, unit_hint: str | None = None):
    if cfg.fmt == "json":
        _echo_json(_quantity_json(q))
    else:
        click.echo(display_quantity(q, unit_hint))


@main.group("thermal")
def thermal_group():
    """Finite-temperature estimates."""


@thermal_group.command("tau")
@click.option("--temperature", "-T", required=True, help='e.g. "2.7 K"')
@click.pass_obj
def thermal_tau(cfg: CliConfig, temperature: str):
    """Fluctuation time h/(k_B T)."""
    t = _resolve_arg(cfg, temperature, TEMPERATURE, "temperature")
    _emit_quantity(cfg, thermal_ops.fluctuation_time(t, cfg.value_set), "s")


@thermal_group.command("temperature")
@click.option("--n", required=True, type=float, help="Constituent count.")
@click.option("--global-time", required=True, help='e.g. "1e-2 s"')
@click.pass_obj
def thermal_temperature(cfg: CliConfig, n: float, global_time: str):
    """Equivalent temperature (h/k_B) sqrt(N) / global_time."""
    gt = _resolve_arg(cfg, global_time, TIME, "global time")
    _emit_quantity(
        cfg, thermal_ops.equivalent_temperature(n, gt, cfg.value_set), "K"
    )


@thermal_group.command("action")
@click.option("--n", required=True, type=float, help="Constituent count.")
@click.pass_obj
def thermal_action_cmd(cfg: CliConfig, n: float):
    """Thermal unit of action h sqrt(N)."""
    _emit_quantity(cfg, thermal_ops.thermal_action(n, cfg.value_set), "J s")


@thermal_group.command("emittance")
@click.option("--n", required=True, type=float, help="Constituent count.")
@click.pass_obj
def thermal_emittance(cfg: CliConfig, n: float):
    """Emittance length sqrt(N) * Compton length."""
    _emit_quantity(cfg, thermal_ops.emittance_length(n, cfg.value_set), "m")


@thermal_group.command("bec")
@click.option("--temperature", "-T", required=True, help='e.g. "1e-6 K"')
@click.option("--n", required=True, type=float, help="Constituent count.")
@click.option("--radius", "-R", required=True, help='e.g. "1e-4 m"')
@click.pass_obj
def thermal_bec(cfg: CliConfig, temperature: str, n: float, radius: str):
    """Condensate rms velocity (k_B/h) (T/sqrt(N)) R."""
    t = _resolve_arg(cfg, temperature, TEMPERATURE, "temperature")
    r = _resolve_arg(cfg, radius, LENGTH, "radius")
    _emit_quantity(
        cfg, thermal_ops.condensate_velocity(t, n, r, cfg.value_set), "m s^(-1)"
    )


@thermal_group.command("count")
@click.option("--mass", required=True, help='e.g. "1e-27 kg" or m_nucleon')
@click.option("--temperature", "-T", required=True, help='e.g. "2.7 K"')
@click.option("--radius", "-R", required=True, help='e.g. "1e30 m" or R_universe')
@click.pass_obj
def thermal_count(cfg: CliConfig, mass: str, temperature: str, radius: str):
    """Constituent count m k_B T R^2 / h^2."""
    m = _resolve_arg(cfg, mass, MASS, "mass")
    t = _resolve_arg(cfg, temperature, TEMPERATURE, "temperature")
    r = _resolve_arg(cfg, radius, LENGTH, "radius")
    count = thermal_ops.constituent_count(m, t, r, cfg.value_set)
    if cfg.fmt == "json":
        _echo_json({"count": count, "log10": round(math.log10(count), 9)})
    else:
        click.echo(f"{count:.3e} (log10 = {math.log10(count):.4f})")


if __name__ == "__main__":
    main()
