"""Order-of-magnitude engine for the characteristic action per constituent
of stable bound systems, with an exact-rational dimension algebra, a
monomial dimensional-analysis solver, a two-value-set constant registry,
and a regression catalog of case studies."""

from .dimensions import (
    ACTION,
    CHARGE,
    DIMENSIONLESS,
    ENERGY,
    FORCE,
    LENGTH,
    MASS,
    TEMPERATURE,
    TIME,
    VELOCITY,
    DimensionMismatch,
    DimVec,
    ParseError,
    Quantity,
    Rational,
    display_quantity,
    log10_ratio,
    parse_quantity,
    render_quantity,
)
from .constants import Registry, UnknownConstant, builtin_registry
from .solver import (
    Inconsistent,
    MonomialProblem,
    MonomialSolution,
    Underdetermined,
    evaluate_monomial,
    solve,
)
from .estimator import (
    ForceLaw,
    NonPositiveN,
    TremorBreakdown,
    alpha_direct,
    alpha_monomial,
    coulomb_law,
    elastic_law,
    force_at,
    gravity_law,
    keplerian_check,
    string_law,
    tremor_chain,
)
from .thermal import (
    MissingField,
    ThermalSpec,
    condensate_velocity,
    constituent_count,
    emittance_length,
    equivalent_temperature,
    fluctuation_time,
    thermal_action,
)
from .catalog import (
    EstimateReport,
    Expectation,
    SystemSpec,
    ValidationError,
    check_all,
    evaluate,
    load_catalog,
    save_catalog,
    summarize,
)

__version__ = "0.1.0"
