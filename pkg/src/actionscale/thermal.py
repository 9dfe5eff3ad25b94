"""Finite-temperature extension of the stability estimate.

The fluctuation time of a system in equilibrium at temperature T is
h/(k_B T).  Inverting that through the N^(-1/2) fluctuation scaling defines
an equivalent temperature for any aggregate with a global time scale, and a
thermal unit of action k_B T * global_time = h sqrt(N).  The applications
exposed here: beam emittance length (sqrt(N) Compton lengths), condensate
velocity, and the constituent count of an aggregate inferred from its
equivalent temperature via equipartition (m v^2 = k_B T folded in
algebraically, so no separate velocity step appears).

Operations take explicit quantities; passing None raises ``MissingField``.
``ThermalSpec`` is the carrier for optional per-system thermal data, and
constructing one never fails - only invoking an operation without its
required fields does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import Registry, builtin_registry
from .dimensions import (
    DIMENSIONLESS,
    LENGTH,
    MASS,
    TEMPERATURE,
    TIME,
    VELOCITY,
    DimensionMismatch,
    Quantity,
    require_dim,
)
from .estimator import check_count

__all__ = [
    "MissingField",
    "ThermalSpec",
    "fluctuation_time",
    "equivalent_temperature",
    "thermal_action",
    "emittance_length",
    "condensate_velocity",
    "constituent_count",
    "THERMAL_OUTPUTS",
]


class MissingField(ValueError):
    """A thermal operation was invoked without a field it requires."""

    def __init__(self, field: str):
        super().__init__(f"missing thermal field {field!r}")
        self.field = field


@dataclass(frozen=True)
class ThermalSpec:
    """Optional thermal data for a system; any subset may be present."""

    temperature: Quantity | None = None
    global_time: Quantity | None = None
    count_n: float | None = None
    radius: Quantity | None = None
    constituent_mass: Quantity | None = None


def _require(value, field: str):
    if value is None:
        raise MissingField(field)
    return value


def _required_count(count_n: float | None) -> Quantity:
    count_n = check_count(_require(count_n, "count_n"))
    return Quantity(math.log10(count_n))


def fluctuation_time(
    temperature: Quantity | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Time scale of fluctuations at temperature T: h / (k_B T)."""
    temperature = _require(temperature, "temperature")
    require_dim(temperature, TEMPERATURE, "temperature")
    registry = registry or builtin_registry()
    tau = registry.lookup("h", value_set) / (
        registry.lookup("k_B", value_set) * temperature
    )
    require_dim(tau, TIME, "fluctuation time")
    return tau


def equivalent_temperature(
    count_n: float | None,
    global_time: Quantity | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Temperature whose fluctuation time matches the aggregate's:
    (h / k_B) sqrt(N) / global_time."""
    n = _required_count(count_n)
    global_time = _require(global_time, "global_time")
    require_dim(global_time, TIME, "global time")
    registry = registry or builtin_registry()
    t = (
        registry.lookup("h", value_set)
        / registry.lookup("k_B", value_set)
        * n ** "1/2"
        / global_time
    )
    require_dim(t, TEMPERATURE, "equivalent temperature")
    return t


def thermal_action(
    count_n: float | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Thermal unit of action h sqrt(N) (= k_B T * global_time)."""
    n = _required_count(count_n)
    registry = registry or builtin_registry()
    return registry.lookup("h", value_set) * n ** "1/2"


def emittance_length(
    count_n: float | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Thermal action expressed as a length: sqrt(N) electron Compton lengths."""
    registry = registry or builtin_registry()
    length = thermal_action(count_n, value_set, registry) / (
        registry.lookup("m_e", value_set) * registry.lookup("c", value_set)
    )
    require_dim(length, LENGTH, "emittance length")
    return length


def condensate_velocity(
    temperature: Quantity | None,
    count_n: float | None,
    radius: Quantity | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Characteristic rms velocity (k_B / h) (T / sqrt(N)) R."""
    temperature = _require(temperature, "temperature")
    require_dim(temperature, TEMPERATURE, "temperature")
    n = _required_count(count_n)
    radius = _require(radius, "radius")
    require_dim(radius, LENGTH, "radius")
    registry = registry or builtin_registry()
    v = (
        registry.lookup("k_B", value_set)
        / registry.lookup("h", value_set)
        * temperature
        / n ** "1/2"
        * radius
    )
    require_dim(v, VELOCITY, "condensate velocity")
    return v


def constituent_count(
    constituent_mass: Quantity | None,
    temperature: Quantity | None,
    radius: Quantity | None,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> float:
    """Count of constituents from the equivalent temperature: m k_B T R^2 / h^2.

    Equipartition (m v^2 = k_B T) is folded in algebraically.  The result is
    checked to be exactly dimensionless before the magnitude is returned.
    """
    constituent_mass = _require(constituent_mass, "constituent_mass")
    require_dim(constituent_mass, MASS, "constituent mass")
    temperature = _require(temperature, "temperature")
    require_dim(temperature, TEMPERATURE, "temperature")
    radius = _require(radius, "radius")
    require_dim(radius, LENGTH, "radius")
    registry = registry or builtin_registry()
    count = (
        constituent_mass
        * registry.lookup("k_B", value_set)
        * temperature
        * radius ** 2
        * registry.lookup("h", value_set) ** -2
    )
    if count.dim != DIMENSIONLESS:
        raise DimensionMismatch(
            f"constituent count has residual dimension {count.dim}"
        )
    return count.si


# Output names a catalog entry may request, with the fields each requires.
THERMAL_OUTPUTS = {
    "fluctuation_time": ("temperature",),
    "equivalent_temperature": ("count_n", "global_time"),
    "thermal_action": ("count_n",),
    "emittance_length": ("count_n",),
    "condensate_velocity": ("temperature", "count_n", "radius"),
    "constituent_count": ("constituent_mass", "temperature", "radius"),
}


def compute_output(
    name: str,
    spec: ThermalSpec,
    value_set: str = "paper",
    registry: Registry | None = None,
) -> Quantity:
    """Evaluate one named thermal output from a ThermalSpec."""
    if name == "fluctuation_time":
        return fluctuation_time(spec.temperature, value_set, registry)
    if name == "equivalent_temperature":
        return equivalent_temperature(
            spec.count_n, spec.global_time, value_set, registry
        )
    if name == "thermal_action":
        return thermal_action(spec.count_n, value_set, registry)
    if name == "emittance_length":
        return emittance_length(spec.count_n, value_set, registry)
    if name == "condensate_velocity":
        return condensate_velocity(
            spec.temperature, spec.count_n, spec.radius, value_set, registry
        )
    if name == "constituent_count":
        return Quantity(
            math.log10(
                constituent_count(
                    spec.constituent_mass, spec.temperature, spec.radius,
                    value_set, registry,
                )
            )
        )
    raise ValueError(f"unknown thermal output {name!r}")
