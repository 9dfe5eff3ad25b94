"""Exact-rational inference of monomial combinations of named constants.

Given generator constants (some with fixed exponents) and a target dimension,
``solve`` finds the unique rational exponent tuple whose monomial carries the
target dimension, by Gaussian elimination over ``Fraction`` on the 4 x k
exponent matrix.  There is no numerical pivoting concern: pivots are simply
the first nonzero entries, and every returned solution is substitution-checked
before it leaves this module.

When the solution space has positive dimension the solver refuses to pick:
it raises ``Underdetermined`` carrying a nullspace basis, because guessing an
exponent would hide a modeling error in the caller's choice of generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .constants import Registry, builtin_registry
from .dimensions import DIMENSIONLESS, DimVec, Quantity, Rational, as_rational

__all__ = [
    "MonomialProblem",
    "MonomialSolution",
    "Underdetermined",
    "Inconsistent",
    "solve",
    "evaluate_monomial",
    "format_exponents",
]

_AXES = ("mass", "length", "time", "temperature")


def format_exponents(exponents: Mapping[str, Rational]) -> str:
    """Render an exponent map as e.g. ``G^(1/2) M^(3/2) R^(1/2)``."""
    parts = []
    for name in exponents:
        exp = exponents[name]
        if exp == 0:
            continue
        if exp.denominator == 1:
            parts.append(f"{name}^({exp.numerator})")
        else:
            parts.append(f"{name}^({exp.numerator}/{exp.denominator})")
    return " ".join(parts) if parts else "1"


class Underdetermined(ValueError):
    """The free solution space has positive dimension.

    ``nullspace`` holds one exponent map per basis vector of the space of
    dimensionless monomials in the free generators.
    """

    def __init__(self, nullspace: tuple[dict[str, Rational], ...]):
        basis = "; ".join(format_exponents(v) for v in nullspace)
        super().__init__(
            f"underdetermined: {len(nullspace)}-dimensional nullspace "
            f"with basis {basis}"
        )
        self.nullspace = nullspace


class Inconsistent(ValueError):
    """No rational exponents of the generators reach the target dimension."""


@dataclass(frozen=True)
class MonomialProblem:
    generators: tuple[tuple[str, DimVec], ...]
    target: DimVec
    fixed: tuple[tuple[str, Rational], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "generators",
            tuple((name, dim) for name, dim in self.generators),
        )
        object.__setattr__(
            self,
            "fixed",
            tuple((name, as_rational(exp)) for name, exp in self.fixed),
        )
        names = [name for name, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        fixed_names = {name for name, _ in self.fixed}
        if not fixed_names <= set(names):
            raise ValueError("fixed names must be a subset of generator names")
        if len(names) - len(fixed_names) > 4:
            raise ValueError("at most 4 free generators (4 dimension constraints)")


@dataclass(frozen=True)
class MonomialSolution:
    exponents: dict[str, Rational]
    residual_dim: DimVec = field(default_factory=lambda: DIMENSIONLESS)

    def __str__(self) -> str:
        return format_exponents(self.exponents)


def _echelon(rows: list[list[Fraction]], ncols: int) -> tuple[list[int], int]:
    """In-place row echelon form; returns (pivot column list, rank)."""
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                factor = rows[i][c] / rows[r][c]
                for j in range(c, len(rows[i])):
                    rows[i][j] -= factor * rows[r][j]
        pivot_cols.append(c)
        r += 1
    return pivot_cols, r


def _back_substitute(
    rows: list[list[Fraction]], pivot_cols: list[int], values: list[Fraction]
) -> None:
    """Fill pivot entries of ``values`` so that rows . values == rhs column."""
    ncols = len(values)
    for r in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[r]
        acc = rows[r][ncols]
        for j in range(c + 1, ncols):
            acc -= rows[r][j] * values[j]
        values[c] = acc / rows[r][c]


def solve(problem: MonomialProblem) -> MonomialSolution:
    """Solve for the unique exponent map reaching the target dimension.

    Raises ``Underdetermined`` (with the nullspace basis) or ``Inconsistent``;
    both mean the caller's set of generators needs refining, not that the
    engine should guess.
    """
    fixed = dict(problem.fixed)
    gen_dims = dict(problem.generators)
    free = [(name, dim) for name, dim in problem.generators if name not in fixed]

    target = problem.target
    for name, exp in fixed.items():
        target = target / gen_dims[name] ** exp

    k = len(free)
    rows = [
        [getattr(dim, axis) for _, dim in free] + [getattr(target, axis)]
        for axis in _AXES
    ]
    pivot_cols, rank = _echelon(rows, k)

    for i in range(rank, len(rows)):
        if rows[i][k] != 0:
            raise Inconsistent(
                f"no exponents of ({', '.join(n for n, _ in problem.generators)}) "
                f"reach dimension {problem.target}"
            )

    free_cols = [c for c in range(k) if c not in pivot_cols]
    if free_cols:
        basis = []
        for fc in free_cols:
            values = [Fraction(0)] * k
            values[fc] = Fraction(1)
            homogeneous = [row[:k] + [Fraction(0)] for row in rows[:rank]]
            for r in range(rank):
                homogeneous[r][k] = -rows[r][fc]
                homogeneous[r][fc] = Fraction(0)
            _back_substitute(homogeneous, pivot_cols, values)
            basis.append({free[c][0]: values[c] for c in range(k)})
        raise Underdetermined(tuple(basis))

    values = [Fraction(0)] * k
    _back_substitute(rows, pivot_cols, values)

    exponents = {name: values[i] for i, (name, _) in enumerate(free)}
    exponents.update(fixed)
    ordered = {name: exponents[name] for name, _ in problem.generators}

    achieved = DIMENSIONLESS
    for name, exp in ordered.items():
        achieved = achieved * gen_dims[name] ** exp
    residual = problem.target / achieved
    if residual != DIMENSIONLESS:
        raise AssertionError(f"substitution check failed, residual {residual}")
    return MonomialSolution(exponents=ordered, residual_dim=residual)


def evaluate_monomial(
    exponents: Mapping[str, Rational] | MonomialSolution,
    value_set: str = "paper",
    registry: Registry | None = None,
    extra: Mapping[str, Quantity] | None = None,
) -> Quantity:
    """Product of named constants raised to the given exponents.

    Names resolve through ``extra`` first, then the registry.  An empty
    exponent map evaluates to dimensionless 1.
    """
    if isinstance(exponents, MonomialSolution):
        exponents = exponents.exponents
    registry = registry or builtin_registry()
    result = Quantity(0.0)
    for name in sorted(exponents):
        if extra is not None and name in extra:
            base = extra[name]
        else:
            base = registry.lookup(name, value_set)
        result = result * base ** exponents[name]
    return result
