"""Independent brute-force oracle for the monomial solver.

Enumerates every exponent tuple on the grid {k/4 : |k| <= 12} per generator
and keeps those whose combined dimension lands exactly on the target.  All
arithmetic is integer (exponents scaled by 4, dimensions scaled by 4), done
with numpy, so this path shares nothing with the Fraction elimination it
checks.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from actionscale.dimensions import DIMENSIONLESS, DimVec

MAX_NUMERATOR = 12
DENOMINATOR = 4


def _scaled(dim: DimVec, factor: int) -> list[int] | None:
    out = []
    for exp in dim.exponents():
        scaled = exp * factor
        if scaled.denominator != 1:
            return None
        out.append(int(scaled))
    return out


def brute_force_solutions(
    gen_dims: list[DimVec], target: DimVec
) -> list[tuple[Fraction, ...]]:
    """All exponent tuples on the grid that reach the target dimension."""
    k = len(gen_dims)
    dims4 = [_scaled(d, DENOMINATOR) for d in gen_dims]
    assert all(d is not None for d in dims4), "generator exponents exceed 1/4 grid"
    dmat = np.array(dims4, dtype=np.int64)  # k x 4
    # grid exponent n/4 times dim exponent d/4 sums in units of 1/16; a target
    # off that lattice has no grid solutions at all
    tvec = _scaled(target, DENOMINATOR * DENOMINATOR)
    if tvec is None:
        return []
    axis = np.arange(-MAX_NUMERATOR, MAX_NUMERATOR + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * k), indexing="ij")
    numerators = np.stack([g.ravel() for g in grids], axis=1)  # (25^k, k)
    hits = np.all(numerators @ dmat == np.array(tvec), axis=1)
    return [
        tuple(Fraction(int(n), DENOMINATOR) for n in row)
        for row in numerators[np.nonzero(hits)[0]]
    ]


def random_instance(rng, k: int = 3):
    """Random generator dims plus a grid exponent tuple and its target."""
    dims = []
    for _ in range(k):
        dims.append(
            DimVec(
                *(
                    Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
                    for _ in range(4)
                )
            )
        )
    true = tuple(Fraction(rng.randint(-MAX_NUMERATOR, MAX_NUMERATOR), DENOMINATOR) for _ in range(k))
    target = DIMENSIONLESS
    for dim, exp in zip(dims, true):
        target = target * dim ** exp
    return dims, true, target


def rational_rank(vectors: list[tuple[Fraction, ...]]) -> int:
    """Rank of a small set of Fraction vectors, by exact elimination."""
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                for j in range(c, ncols):
                    rows[i][j] -= f * rows[rank][j]
        rank += 1
    return rank


def check_solver_agreement(rng, solve, make_problem) -> None:
    """One random-instance agreement check between solve() and brute force."""
    dims, true, target = random_instance(rng)
    names = [f"g{i}" for i in range(len(dims))]
    problem = make_problem(tuple(zip(names, dims)), target)
    grid_hits = brute_force_solutions(dims, target)
    assert true in grid_hits, "instance generator broke: true solution off-grid"

    from actionscale.solver import Underdetermined, solve as _solve_default

    solver = solve or _solve_default
    try:
        solution = solver(problem)
    except Underdetermined as exc:
        basis = [tuple(vec[n] for n in names) for vec in exc.nullspace]
        for vec in basis:
            combined = DIMENSIONLESS
            for dim, exp in zip(dims, vec):
                combined = combined * dim ** exp
            assert combined == DIMENSIONLESS, "nullspace vector is not dimensionless"
        base_rank = rational_rank(basis)
        for hit in grid_hits:
            delta = tuple(h - t for h, t in zip(hit, true))
            assert rational_rank(basis + [delta]) == base_rank, (
                "grid solution outside reported nullspace span"
            )
    else:
        got = tuple(solution.exponents[n] for n in names)
        assert grid_hits == [got], (
            f"solver returned {got}, brute force found {grid_hits}"
        )
