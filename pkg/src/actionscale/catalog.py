"""Persistent registry of case-study systems and their evaluation.

Each catalog entry describes one bound aggregate: constituent mass, stability
radius, optional constituent count, a monomial force law and/or thermal data,
and an optional expectation used to grade the result.  Quantity-valued fields
are either literals in the quantity grammar ("1e-10 m") or names resolved
through the constant registry ("m_e", "R_universe"), so the same entry can be
replayed against either value set.

Expectations carry the published claims.  Where recomputation contradicts a
claim the entry is marked informational: the gap is reported in the notes
rather than turned into a failing verdict, and nothing about it is hidden.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import thermal as thermal_ops
from .constants import Registry, builtin_registry
from .dimensions import (
    LENGTH,
    DimensionMismatch,
    DimVec,
    ParseError,
    Quantity,
    Rational,
    log10_ratio,
    parse_quantity,
)
from .estimator import ForceLaw, TremorBreakdown, alpha_direct, tremor_chain
from .thermal import THERMAL_OUTPUTS, ThermalSpec

__all__ = [
    "ValidationError",
    "Expectation",
    "LocalConstant",
    "ThermalInputs",
    "SystemSpec",
    "EstimateReport",
    "resolve_quantity",
    "load_catalog",
    "save_catalog",
    "evaluate",
    "check_all",
    "summarize",
]


class ValidationError(ValueError):
    """A catalog entry fails a structural invariant."""

    def __init__(self, message: str, entry: str = "", fieldname: str = ""):
        where = entry and (f"[{entry}]" + (f".{fieldname}" if fieldname else ""))
        super().__init__(f"{where}: {message}" if where else message)
        self.entry = entry
        self.fieldname = fieldname


@dataclass(frozen=True)
class Expectation:
    """Documented target for one measured number, in decades.

    ``measure`` is ``decades_from_h`` (offset of the action from h) or
    ``log10:<output>`` (absolute decade of a named thermal output).
    Informational expectations record a claim without gating pass/fail.
    """

    decades: float
    tol: float
    measure: str = "decades_from_h"
    informational: bool = False


@dataclass(frozen=True)
class LocalConstant:
    """Entry-local constant: a quantity literal, or an elastic constant
    derived from an electron density as 4 pi n_e e^2 (value-set dependent
    through the charge)."""

    literal: str | None = None
    plasma_density: str | None = None


@dataclass(frozen=True)
class ThermalInputs:
    temperature: str | None = None
    global_time: str | None = None
    outputs: tuple[str, ...] = ()


@dataclass(frozen=True)
class SystemSpec:
    id: str
    description: str
    citation: str
    constituent_mass: str
    radius: str
    count_n: float | None = None
    force: ForceLaw | None = None
    local_constants: dict[str, LocalConstant] = field(default_factory=dict)
    thermal: ThermalInputs | None = None
    expectation: Expectation | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class EstimateReport:
    system_id: str
    description: str
    value_set: str
    verdict: str  # "pass" | "fail" | "informational"
    citation: str = ""
    alpha: Quantity | None = None
    decades_from_h: float | None = None
    thermal_outputs: dict[str, Quantity] = field(default_factory=dict)
    measured: float | None = None
    expectation: Expectation | None = None
    breakdown: TremorBreakdown | None = None
    notes: tuple[str, ...] = ()


def resolve_quantity(
    ref: str, value_set: str = "paper", registry: Registry | None = None
) -> Quantity:
    """Resolve a registry name or parse a quantity literal."""
    registry = registry or builtin_registry()
    if ref in registry:
        return registry.lookup(ref, value_set)
    return parse_quantity(ref)


def _local_value(
    local: LocalConstant, value_set: str, registry: Registry
) -> Quantity:
    if local.literal is not None:
        return parse_quantity(local.literal)
    density = parse_quantity(local.plasma_density)
    if density.dim != LENGTH ** -3:
        raise ValidationError(
            f"plasma density must have dimension {LENGTH ** -3}, got {density.dim}"
        )
    return (
        registry.lookup("four_pi", value_set)
        * density
        * registry.lookup("e", value_set) ** 2
    )


# --- loading --------------------------------------------------------------


def _require_str(table: Mapping, key: str, entry: str) -> str:
    value = table.get(key)
    if not isinstance(value, str) or not value:
        raise ValidationError(f"missing or non-string field {key!r}", entry)
    return value


def _parse_fraction(text, entry: str, fieldname: str) -> Rational:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}: {exc}", entry, fieldname)


def _parse_local(table: Mapping, entry: str) -> dict[str, LocalConstant]:
    locals_: dict[str, LocalConstant] = {}
    for name, value in table.items():
        if isinstance(value, str):
            locals_[name] = LocalConstant(literal=value)
        elif isinstance(value, Mapping) and "plasma_density" in value:
            locals_[name] = LocalConstant(plasma_density=value["plasma_density"])
        else:
            raise ValidationError(
                "local constant must be a literal string or "
                "{ plasma_density = ... }", entry, f"local.{name}"
            )
    return locals_


def _parse_entry(entry_id: str, table: Mapping, registry: Registry) -> SystemSpec:
    description = _require_str(table, "description", entry_id)
    citation = _require_str(table, "cite", entry_id)
    mass_ref = _require_str(table, "mass", entry_id)
    radius_ref = _require_str(table, "radius", entry_id)

    count_n = table.get("n")
    if count_n is not None:
        count_n = float(count_n)
        if count_n < 1.0:
            raise ValidationError("count n must be >= 1", entry_id, "n")

    locals_ = _parse_local(table.get("local", {}), entry_id)

    # Both quantity refs must resolve; dims are value-set independent.
    try:
        mass_q = resolve_quantity(mass_ref, "paper", registry)
        radius_q = resolve_quantity(radius_ref, "paper", registry)
        local_dims = {
            name: _local_value(lc, "paper", registry).dim
            for name, lc in locals_.items()
        }
    except ParseError as exc:
        raise ValidationError(str(exc), entry_id, "mass/radius/local")
    if radius_q.dim != LENGTH:
        raise ValidationError(
            f"radius must be a length, got {radius_q.dim}", entry_id, "radius"
        )

    force = None
    if "force" in table:
        ftab = table["force"]
        constants = {
            name: _parse_fraction(exp, entry_id, f"force.constants.{name}")
            for name, exp in ftab.get("constants", {}).items()
        }
        r_exp = _parse_fraction(ftab.get("r_exp", "0"), entry_id, "force.r_exp")
        dims: dict[str, DimVec] = dict(local_dims)
        for name in constants:
            if name not in dims:
                if name not in registry:
                    raise ValidationError(
                        f"force constant {name!r} is neither local nor registered",
                        entry_id, "force",
                    )
                dims[name] = registry.dim(name)
        try:
            force = ForceLaw.checked(constants, r_exp, dims)
        except DimensionMismatch as exc:
            raise ValidationError(str(exc), entry_id, "force")

    thermal = None
    if "thermal" in table:
        ttab = table["thermal"]
        outputs = tuple(ttab.get("outputs", ()))
        for name in outputs:
            if name not in THERMAL_OUTPUTS:
                raise ValidationError(
                    f"unknown thermal output {name!r}", entry_id, "thermal.outputs"
                )
        thermal = ThermalInputs(
            temperature=ttab.get("temperature"),
            global_time=ttab.get("global_time"),
            outputs=outputs,
        )
        available = {
            "temperature": thermal.temperature is not None,
            "global_time": thermal.global_time is not None,
            "count_n": count_n is not None,
            "radius": True,
            "constituent_mass": True,
        }
        for name in outputs:
            for needs in THERMAL_OUTPUTS[name]:
                if not available[needs]:
                    raise ValidationError(
                        f"thermal output {name!r} needs field {needs!r}",
                        entry_id, "thermal",
                    )

    if force is None and thermal is None:
        raise ValidationError(
            "entry must define at least one of force / thermal", entry_id
        )

    expectation = None
    if "expect" in table:
        etab = table["expect"]
        expectation = Expectation(
            decades=float(etab["decades"]),
            tol=float(etab["tol"]),
            measure=etab.get("measure", "decades_from_h"),
            informational=bool(etab.get("informational", False)),
        )
        if expectation.tol <= 0:
            raise ValidationError("tolerance must be > 0", entry_id, "expect.tol")
        if expectation.measure == "decades_from_h":
            if force is None:
                raise ValidationError(
                    "decades_from_h expectation needs a force law", entry_id, "expect"
                )
        elif expectation.measure.startswith("log10:"):
            output = expectation.measure[len("log10:"):]
            if thermal is None or output not in thermal.outputs:
                raise ValidationError(
                    f"expectation measure targets missing output {output!r}",
                    entry_id, "expect",
                )
        else:
            raise ValidationError(
                f"unknown measure {expectation.measure!r}", entry_id, "expect"
            )

    notes = tuple(table.get("notes", ()))
    return SystemSpec(
        id=entry_id,
        description=description,
        citation=citation,
        constituent_mass=mass_ref,
        radius=radius_ref,
        count_n=count_n,
        force=force,
        local_constants=locals_,
        thermal=thermal,
        expectation=expectation,
        notes=notes,
    )


def builtin_catalog_path() -> Path:
    source = resources.files(__package__) / "data" / "catalog.toml"
    with resources.as_file(source) as fp:
        return Path(fp)


def load_catalog(
    path: str | Path | None = None, registry: Registry | None = None
) -> list[SystemSpec]:
    """Load and validate a catalog file; entries keep file order."""
    registry = registry or builtin_registry()
    if path is None:
        path = builtin_catalog_path()
    with open(path, "rb") as fh:
        try:
            doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ValidationError(f"not valid TOML: {exc}")
    doc.pop("meta", None)
    return [
        _parse_entry(entry_id, table, registry) for entry_id, table in doc.items()
    ]


# --- saving ---------------------------------------------------------------

_BARE_KEY = re.compile(r"[A-Za-z0-9_-]+")


def _toml_key(key: str) -> str:
    return key if _BARE_KEY.fullmatch(key) else '"' + key.replace('"', '\\"') + '"'


def _toml_value(value) -> str:
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, Fraction):
        return _toml_value(
            str(value.numerator)
            if value.denominator == 1
            else f"{value.numerator}/{value.denominator}"
        )
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    if isinstance(value, dict):
        inner = ", ".join(
            f"{_toml_key(k)} = {_toml_value(v)}" for k, v in value.items()
        )
        return "{ " + inner + " }"
    raise TypeError(f"cannot serialize {value!r}")


def save_catalog(specs: list[SystemSpec], path: str | Path) -> None:
    """Write entries back out as TOML; load(save(x)) is field-for-field x."""
    lines = ["[meta]", 'version = "1"', ""]
    for spec in specs:
        lines.append(f"[{_toml_key(spec.id)}]")
        lines.append(f"description = {_toml_value(spec.description)}")
        lines.append(f"cite = {_toml_value(spec.citation)}")
        lines.append(f"mass = {_toml_value(spec.constituent_mass)}")
        lines.append(f"radius = {_toml_value(spec.radius)}")
        if spec.count_n is not None:
            lines.append(f"n = {_toml_value(spec.count_n)}")
        if spec.force is not None:
            lines.append(
                "force = "
                + _toml_value(
                    {
                        "constants": spec.force.constant_exponents,
                        "r_exp": spec.force.radius_exponent,
                    }
                )
            )
        if spec.thermal is not None:
            ttab = {}
            if spec.thermal.temperature is not None:
                ttab["temperature"] = spec.thermal.temperature
            if spec.thermal.global_time is not None:
                ttab["global_time"] = spec.thermal.global_time
            ttab["outputs"] = list(spec.thermal.outputs)
            lines.append(f"thermal = {_toml_value(ttab)}")
        if spec.expectation is not None:
            exp = spec.expectation
            etab = {"decades": exp.decades, "tol": exp.tol}
            if exp.measure != "decades_from_h":
                etab["measure"] = exp.measure
            if exp.informational:
                etab["informational"] = True
            lines.append(f"expect = {_toml_value(etab)}")
        if spec.notes:
            lines.append(f"notes = {_toml_value(list(spec.notes))}")
        if spec.local_constants:
            lines.append("")
            lines.append(f"[{_toml_key(spec.id)}.local]")
            for name, lc in spec.local_constants.items():
                if lc.literal is not None:
                    lines.append(f"{_toml_key(name)} = {_toml_value(lc.literal)}")
                else:
                    lines.append(
                        f"{_toml_key(name)} = "
                        + _toml_value({"plasma_density": lc.plasma_density})
                    )
        lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")


# --- evaluation -------------------------------------------------------------


def evaluate(
    spec: SystemSpec,
    value_set: str = "paper",
    registry: Registry | None = None,
    tolerance_override: float | None = None,
) -> EstimateReport:
    """Evaluate one entry on one value set; pure in (spec, value_set)."""
    registry = registry or builtin_registry()
    env = {
        name: _local_value(lc, value_set, registry)
        for name, lc in spec.local_constants.items()
    }
    mass = resolve_quantity(spec.constituent_mass, value_set, registry)
    radius = resolve_quantity(spec.radius, value_set, registry)

    alpha = None
    decades_from_h = None
    breakdown = None
    if spec.force is not None:
        if spec.count_n is not None:
            breakdown = tremor_chain(
                mass, radius, spec.force, spec.count_n, value_set, registry, env
            )
            alpha = breakdown.action_per_particle
        else:
            alpha = alpha_direct(mass, radius, spec.force, value_set, registry, env)
        decades_from_h = log10_ratio(alpha, registry.lookup("h", value_set))

    thermal_outputs: dict[str, Quantity] = {}
    if spec.thermal is not None:
        tspec = ThermalSpec(
            temperature=(
                resolve_quantity(spec.thermal.temperature, value_set, registry)
                if spec.thermal.temperature is not None
                else None
            ),
            global_time=(
                resolve_quantity(spec.thermal.global_time, value_set, registry)
                if spec.thermal.global_time is not None
                else None
            ),
            count_n=spec.count_n,
            radius=radius,
            constituent_mass=mass,
        )
        for name in spec.thermal.outputs:
            thermal_outputs[name] = thermal_ops.compute_output(
                name, tspec, value_set, registry
            )

    measured = None
    expectation = spec.expectation
    if expectation is not None:
        if tolerance_override is not None:
            expectation = Expectation(
                decades=expectation.decades,
                tol=tolerance_override,
                measure=expectation.measure,
                informational=expectation.informational,
            )
        if expectation.measure == "decades_from_h":
            measured = decades_from_h
        else:
            output = expectation.measure[len("log10:"):]
            measured = thermal_outputs[output].log10_magnitude

    notes = list(spec.notes)
    if expectation is None:
        verdict = "informational"
    elif expectation.informational:
        verdict = "informational"
        notes.append(
            f"informational: measured {measured:+.3f} vs documented "
            f"{expectation.decades:+.1f} +/- {expectation.tol:.1f} "
            f"({expectation.measure})"
        )
    else:
        verdict = "pass" if abs(measured - expectation.decades) <= expectation.tol else "fail"

    return EstimateReport(
        system_id=spec.id,
        description=spec.description,
        value_set=value_set,
        verdict=verdict,
        citation=spec.citation,
        alpha=alpha,
        decades_from_h=decades_from_h,
        thermal_outputs=thermal_outputs,
        measured=measured,
        expectation=expectation,
        breakdown=breakdown,
        notes=tuple(notes),
    )


def check_all(
    specs: list[SystemSpec] | None = None,
    value_set: str = "paper",
    tolerance_override: float | None = None,
    registry: Registry | None = None,
) -> tuple[EstimateReport, ...]:
    """Evaluate every entry, ordered by id; entry errors become failed reports."""
    if specs is None:
        specs = load_catalog()
    reports = []
    for spec in sorted(specs, key=lambda s: s.id):
        try:
            reports.append(evaluate(spec, value_set, registry, tolerance_override))
        except Exception as exc:  # per-entry isolation
            reports.append(
                EstimateReport(
                    system_id=spec.id,
                    description=spec.description,
                    value_set=value_set,
                    verdict="fail",
                    citation=spec.citation,
                    notes=(f"error: {exc}",),
                )
            )
    return tuple(reports)


def summarize(reports: tuple[EstimateReport, ...]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "informational": 0}
    for report in reports:
        counts[report.verdict] += 1
    return counts
