"""Stability pipeline: monomial force laws, virial velocity, characteristic
times, and the action-per-constituent estimate.

The central estimate for a bound aggregate of N constituents of mass m held
at radius R by a force law F is

    alpha = m^(1/2) R^(3/2) F(R)^(1/2)

obtained by requiring that per-constituent potential work and kinetic energy
share an order of magnitude (virial stability) and that alpha not depend on
N (universal stability).  ``tremor_chain`` exposes the full chain of
intermediate scales - work, velocity, global and fluctuation times, energies,
total action, mean free path - and ``alpha_direct`` computes the estimate
alone.  All order-one factors are dropped: the mean length scale is taken
equal to R, the volume equal to R^3, and elastic laws use R itself as the
elongation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .constants import Registry, builtin_registry
from .dimensions import (
    ACTION,
    DIMENSIONLESS,
    ENERGY,
    FORCE,
    LENGTH,
    MASS,
    TIME,
    VELOCITY,
    DimensionMismatch,
    DimVec,
    Quantity,
    Rational,
    as_rational,
    require_dim,
)
from .solver import evaluate_monomial

__all__ = [
    "NonPositiveN",
    "ForceLaw",
    "TremorBreakdown",
    "gravity_law",
    "coulomb_law",
    "elastic_law",
    "string_law",
    "force_at",
    "alpha_direct",
    "tremor_chain",
    "keplerian_check",
    "check_count",
    "alpha_monomial",
    "gev",
    "fm",
    "gev_per_fm",
    "gev_over_c2",
    "GEV_IN_JOULES",
    "FM_IN_METERS",
]


class NonPositiveN(ValueError):
    """Constituent counts must be finite and at least 1."""


@dataclass(frozen=True)
class ForceLaw:
    """Monomial in named constants times a rational power of the radius."""

    constant_exponents: dict[str, Rational]
    radius_exponent: Rational

    def __post_init__(self):
        object.__setattr__(
            self,
            "constant_exponents",
            {name: as_rational(exp) for name, exp in self.constant_exponents.items()},
        )
        object.__setattr__(self, "radius_exponent", as_rational(self.radius_exponent))

    def dimension(self, dims: Mapping[str, DimVec]) -> DimVec:
        total = LENGTH ** self.radius_exponent
        for name, exp in self.constant_exponents.items():
            total = total * dims[name] ** exp
        return total

    @classmethod
    def checked(
        cls,
        constant_exponents: Mapping[str, Rational | int | str],
        radius_exponent: Rational | int | str,
        dims: Mapping[str, DimVec],
    ) -> ForceLaw:
        """Build a law and verify it resolves to the force dimension."""
        law = cls(dict(constant_exponents), as_rational(radius_exponent))
        got = law.dimension(dims)
        if got != FORCE:
            raise DimensionMismatch(
                f"force law resolves to dimension {got}, not {FORCE}"
            )
        return law


def gravity_law(mass_constant: str = "m_nucleon") -> ForceLaw:
    return ForceLaw({"G": Fraction(1), mass_constant: Fraction(2)}, Fraction(-2))


def coulomb_law() -> ForceLaw:
    return ForceLaw({"e": Fraction(2)}, Fraction(-2))


def elastic_law(constant: str) -> ForceLaw:
    """Restoring-force magnitude k*R, with R as the maximal elongation."""
    return ForceLaw({constant: Fraction(1)}, Fraction(1))


def string_law(constant: str) -> ForceLaw:
    """Constant confining force, independent of separation."""
    return ForceLaw({constant: Fraction(1)}, Fraction(0))


def force_at(
    law: ForceLaw,
    radius: Quantity,
    value_set: str = "paper",
    registry: Registry | None = None,
    extra: Mapping[str, Quantity] | None = None,
) -> Quantity:
    """Magnitude of the law at separation ``radius``; result must be a force."""
    require_dim(radius, LENGTH, "separation radius")
    constants = evaluate_monomial(law.constant_exponents, value_set, registry, extra)
    force = constants * radius ** law.radius_exponent
    if force.dim != FORCE:
        raise DimensionMismatch(
            f"malformed force law: evaluates to dimension {force.dim}"
        )
    return force


def alpha_direct(
    mass: Quantity,
    radius: Quantity,
    law: ForceLaw,
    value_set: str = "paper",
    registry: Registry | None = None,
    extra: Mapping[str, Quantity] | None = None,
) -> Quantity:
    """Characteristic action per constituent: m^(1/2) R^(3/2) F(R)^(1/2)."""
    require_dim(mass, MASS, "constituent mass")
    require_dim(radius, LENGTH, "stability radius")
    force = force_at(law, radius, value_set, registry, extra)
    alpha = (
        mass ** Fraction(1, 2)
        * radius ** Fraction(3, 2)
        * force ** Fraction(1, 2)
    )
    require_dim(alpha, ACTION, "action estimate")
    return alpha


@dataclass(frozen=True)
class TremorBreakdown:
    """Every intermediate scale of the stability chain, plus its inputs."""

    constituent_mass: Quantity
    radius: Quantity
    count_n: float
    force: Quantity
    work: Quantity
    velocity: Quantity
    global_time: Quantity
    fluctuation_time: Quantity
    energy_per_particle: Quantity
    total_energy: Quantity
    total_action: Quantity
    action_per_particle: Quantity
    mean_free_path: Quantity


def check_count(count_n: float) -> float:
    count_n = float(count_n)
    if not math.isfinite(count_n) or count_n < 1.0:
        raise NonPositiveN(f"constituent count must be >= 1, got {count_n!r}")
    return count_n


def tremor_chain(
    mass: Quantity,
    radius: Quantity,
    law: ForceLaw,
    count_n: float,
    value_set: str = "paper",
    registry: Registry | None = None,
    extra: Mapping[str, Quantity] | None = None,
) -> TremorBreakdown:
    """Full stability chain for an N-constituent aggregate.

    Work per constituent is N F(R) R; the virial condition m v^2 = work fixes
    the velocity; the global time is R/v; the fluctuation time is N^(-1/2)
    times the global time; and the action per constituent is the kinetic
    energy times the fluctuation time.  N cancels from the action, which is
    the point: the result equals ``alpha_direct`` for every N.
    """
    require_dim(mass, MASS, "constituent mass")
    require_dim(radius, LENGTH, "stability radius")
    count_n = check_count(count_n)
    n = Quantity(math.log10(count_n))

    force = force_at(law, radius, value_set, registry, extra)
    work = n * force * radius
    velocity = (work / mass) ** Fraction(1, 2)
    global_time = radius / velocity
    fluctuation_time = global_time * n ** Fraction(-1, 2)
    energy_per_particle = mass * velocity ** 2
    total_energy = n * energy_per_particle
    total_action = total_energy * global_time
    action_per_particle = energy_per_particle * fluctuation_time
    mean_free_path = (radius ** 3 / n) ** Fraction(1, 3)

    for q, dim, what in (
        (work, ENERGY, "work per constituent"),
        (velocity, VELOCITY, "characteristic velocity"),
        (global_time, TIME, "global time"),
        (fluctuation_time, TIME, "fluctuation time"),
        (energy_per_particle, ENERGY, "energy per constituent"),
        (total_energy, ENERGY, "total energy"),
        (total_action, ACTION, "total action"),
        (action_per_particle, ACTION, "action per constituent"),
        (mean_free_path, LENGTH, "mean free path"),
    ):
        require_dim(q, dim, what)

    return TremorBreakdown(
        constituent_mass=mass,
        radius=radius,
        count_n=count_n,
        force=force,
        work=work,
        velocity=velocity,
        global_time=global_time,
        fluctuation_time=fluctuation_time,
        energy_per_particle=energy_per_particle,
        total_energy=total_energy,
        total_action=total_action,
        action_per_particle=action_per_particle,
        mean_free_path=mean_free_path,
    )


def keplerian_check(breakdown: TremorBreakdown) -> float:
    """log10 of l^3 T^2 / (tau^2 R^3); identically 0 for a valid chain.

    This realizes the 2/3-power scaling between mean free path and
    fluctuation time that holds once the volume is identified with R^3.
    """
    ratio = (
        breakdown.mean_free_path ** 3
        * breakdown.global_time ** 2
        / (breakdown.fluctuation_time ** 2 * breakdown.radius ** 3)
    )
    if ratio.dim != DIMENSIONLESS:
        raise DimensionMismatch(f"scaling ratio has dimension {ratio.dim}")
    return ratio.log10_magnitude


def alpha_monomial(
    force_constants: Mapping[str, Rational | int | str],
    radius_exponent: Rational | int | str,
    mass_name: str,
) -> tuple[dict[str, Rational], Rational]:
    """Action exponents implied by a monomial force law, symbolically.

    Halves every force exponent, adds 1/2 to the constituent-mass name and
    3/2 to the radius.  Zero entries are kept so callers can assert them.
    """
    half = Fraction(1, 2)
    out = {name: as_rational(exp) * half for name, exp in force_constants.items()}
    out[mass_name] = out.get(mass_name, Fraction(0)) + half
    radius = Fraction(3, 2) + as_rational(radius_exponent) * half
    return out, radius


# Fixed conversion factors for catalog inputs quoted in particle-physics units.
GEV_IN_JOULES = 1.602e-10
FM_IN_METERS = 1e-15


def gev(energy_gev: float) -> Quantity:
    return Quantity.from_si(energy_gev * GEV_IN_JOULES, ENERGY)


def fm(length_fm: float) -> Quantity:
    return Quantity.from_si(length_fm * FM_IN_METERS, LENGTH)


def gev_per_fm(force_gev_per_fm: float) -> Quantity:
    return Quantity.from_si(
        force_gev_per_fm * GEV_IN_JOULES / FM_IN_METERS, FORCE
    )


def gev_over_c2(
    mass_gev: float, value_set: str = "paper", registry: Registry | None = None
) -> Quantity:
    registry = registry or builtin_registry()
    c = registry.lookup("c", value_set)
    mass = gev(mass_gev) / c ** 2
    require_dim(mass, MASS, "converted mass")
    return mass
