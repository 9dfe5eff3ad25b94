"""Acceptance gate: one test and one printed pass/fail line per criterion.

Every expected value here is produced by an in-test plain-float oracle or an
exact-arithmetic argument, independent of the package's log-space evaluation
path.  Tolerances are pinned in decades.

Two checks are deliberately left red rather than weakened, because the claims
they encode do not survive recomputation:

* criterion 07, flatness sweep: the screened gamma=-1 action scales as
  R^(1/4), so an 8-decade radius sweep moves it by exactly 2.0 decades; the
  stated "< 1.0 decade" bound is unattainable for that monomial.
* criterion 10, constituent count: with the documented decade inputs
  (m = 1e-27 kg, k_B = 1.38e-23 J/K, T = 2.7 K, R = 1e30 m, h = 6.6e-34 J s)
  the count is 8.55e76, which is 1.068 decades from the claimed 1e78 - just
  outside the stated 1-decade gate (the claim needs decade-level h ~ 1e-34).

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion lines.
"""

import json
import math
import random
from fractions import Fraction as F

from click.testing import CliRunner

from brute_oracle import check_solver_agreement
from actionscale.catalog import check_all, evaluate, load_catalog
from actionscale.cli import main as cli_main
from actionscale.constants import builtin_registry
from actionscale.dimensions import (
    ACTION,
    FORCE,
    LENGTH,
    MASS,
    DimensionMismatch,
    Quantity,
    log10_ratio,
    parse_quantity,
    render_quantity,
)
from actionscale.estimator import (
    ForceLaw,
    alpha_direct,
    alpha_monomial,
    coulomb_law,
    force_at,
    gravity_law,
    keplerian_check,
    tremor_chain,
)
from actionscale.solver import MonomialProblem, evaluate_monomial, solve
from actionscale.thermal import (
    condensate_velocity,
    constituent_count,
    emittance_length,
    equivalent_temperature,
)

REG = builtin_registry()
SPECS = {s.id: s for s in load_catalog()}


def _finish(num: int, label: str, checks: list[tuple[str, bool, str]]) -> None:
    ok = all(passed for _, passed, _ in checks)
    detail = ", ".join(
        f"{name} {'PASS' if passed else 'FAIL'}"
        + (f" ({info})" if info and not passed else "")
        for name, passed, info in checks
    )
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {label} :: {detail}")
    assert ok, f"criterion {num:02d} {label}: {detail}"


def _em_problem(gamma):
    return MonomialProblem(
        generators=(
            ("e2", REG.dim("e2")),
            ("m", MASS),
            ("R", LENGTH),
            ("c", REG.dim("c")),
        ),
        target=FORCE,
        fixed=(("c", F(gamma)),),
    )


def test_criterion_01_monomial_inference():
    checks = []
    got = solve(
        MonomialProblem(
            generators=(("G", REG.dim("G")), ("M", MASS), ("R", LENGTH)),
            target=ACTION,
        )
    ).exponents
    checks.append(
        ("gravitational-action",
         got == {"G": F(1, 2), "M": F(3, 2), "R": F(1, 2)}, str(got))
    )
    got = solve(_em_problem(-1)).exponents
    checks.append(
        ("screened-c1",
         got == {"e2": F(3, 2), "m": F(-1, 2), "R": F(-5, 2), "c": F(-1)},
         str(got))
    )
    got = solve(_em_problem(-2)).exponents
    checks.append(
        ("screened-c2",
         got == {"e2": F(2), "m": F(-1), "R": F(-3), "c": F(-2)}, str(got))
    )
    _finish(1, "monomial inference, exact rational equality", checks)


def test_criterion_02_action_forms_from_solved_forces():
    expected = {
        0: ({"e2": F(1, 2), "m": F(1, 2), "c": F(0)}, F(1, 2)),
        -1: ({"e2": F(3, 4), "m": F(1, 4), "c": F(-1, 2)}, F(1, 4)),
        -2: ({"e2": F(1), "m": F(0), "c": F(-1)}, F(0)),
    }
    checks = []
    for gamma, (want_consts, want_radius) in expected.items():
        solution = solve(_em_problem(gamma)).exponents
        force_part = {k: v for k, v in solution.items() if k != "R"}
        consts, radius = alpha_monomial(force_part, solution["R"], "m")
        checks.append(
            (f"gamma={gamma}",
             consts == want_consts and radius == want_radius,
             f"{consts} R^{radius}")
        )
    checks.append(
        ("radius-exponent-exactly-0",
         alpha_monomial(
             {k: v for k, v in solve(_em_problem(-2)).exponents.items() if k != "R"},
             solve(_em_problem(-2)).exponents["R"], "m",
         )[1] == F(0), "")
    )
    _finish(2, "action exponent families from solved forces", checks)


def test_criterion_03_hydrogen():
    oracle = math.sqrt(1e-30) * 1e-14 * math.sqrt(1e-10)
    report = evaluate(SPECS["hydrogen"], "paper")
    checks = [
        ("within-1-decade-of-h", abs(report.decades_from_h) <= 1.0,
         f"{report.decades_from_h:+.3f}"),
        ("oracle-1e-34", abs(math.log10(report.alpha.si / oracle)) <= 0.05,
         f"{report.alpha.si:.3e}"),
    ]
    _finish(3, "hydrogen on the documented decade inputs", checks)


def test_criterion_04_beams():
    hera_oracle = math.sqrt(1.67e-27) * math.sqrt(1e-12) * (1e-7) ** 2
    hera = evaluate(SPECS["beam-hera-proton"], "paper")
    collider = evaluate(SPECS["beam-linear-electron"], "paper")
    checks = [
        ("hera-within-1", abs(hera.decades_from_h) <= 1.0,
         f"{hera.decades_from_h:+.3f}"),
        ("hera-oracle", abs(math.log10(hera.alpha.si / hera_oracle)) <= 0.05,
         f"{hera.alpha.si:.3e} vs {hera_oracle:.3e}"),
        ("collider-within-1.5", abs(collider.decades_from_h) <= 1.5,
         f"{collider.decades_from_h:+.3f}"),
    ]
    _finish(4, "proton and electron beam bunches", checks)


def test_criterion_05_plasmas():
    plasma_ids = (
        "plasma-discharge-high",
        "plasma-discharge-extreme",
        "plasma-laser-stationary",
        "plasma-laser-fusion",
    )

    def oracle(n_e, r_d, m_e, e, h):
        k_p = 4 * math.pi * n_e * e ** 2
        return math.log10(math.sqrt(m_e * k_p) * r_d ** 2 / h)

    inputs = {
        "plasma-discharge-high": (1e21, 1e-7),
        "plasma-discharge-extreme": (1e23, 1e-9),
        "plasma-laser-stationary": (1e23, 1e-9),
        "plasma-laser-fusion": (1e28, 5e-10),
    }
    checks = []
    modern_decades = []
    for pid in plasma_ids:
        for value_set in ("paper", "modern"):
            report = evaluate(SPECS[pid], value_set)
            checks.append(
                (f"{pid}-{value_set}", abs(report.decades_from_h) <= 2.0,
                 f"{report.decades_from_h:+.3f}")
            )
            if value_set == "modern":
                n_e, r_d = inputs[pid]
                want = oracle(
                    n_e, r_d, 9.1093837015e-31, 1.5189067e-14, 6.62607015e-34
                )
                checks.append(
                    (f"{pid}-oracle",
                     abs(report.decades_from_h - want) <= 0.01,
                     f"{report.decades_from_h:+.3f} vs {want:+.3f}")
                )
                modern_decades.append(report.decades_from_h)
    checks.append(
        ("oracle-range-plus1.4-to-minus1.6",
         abs(max(modern_decades) - 1.39) <= 0.05
         and abs(min(modern_decades) - (-1.61)) <= 0.05,
         f"[{min(modern_decades):+.2f}, {max(modern_decades):+.2f}]")
    )
    _finish(5, "four parameterized plasmas within 2 decades", checks)


def test_criterion_06_quarks():
    string_oracle = math.sqrt(1.602e-10 / 9e16) * (1e-15) ** 1.5 * math.sqrt(1.602e5)
    string = evaluate(SPECS["quark-string"], "paper")
    gauss = evaluate(SPECS["quark-gauss"], "paper")
    checks = [
        ("string-within-1", abs(string.decades_from_h) <= 1.0,
         f"{string.decades_from_h:+.3f}"),
        ("string-oracle", abs(math.log10(string.alpha.si / string_oracle)) <= 0.05,
         f"{string.alpha.si:.3e}"),
        ("gauss-within-2", abs(gauss.decades_from_h) <= 2.0,
         f"{gauss.decades_from_h:+.3f}"),
    ]
    _finish(6, "confined quarks, string and inverse-square forms", checks)


def test_criterion_07_screened_gamma1():
    # oracle in plain floats with the modern registry inputs
    def alpha_at(radius):
        return (
            9.1093837015e-31 ** 0.25
            * 1.5189067e-14 ** 1.5
            * 2.99792458e8 ** -0.5
            * radius ** 0.25
        )

    law = SPECS["screened-gamma1"].force
    mass = REG.lookup("m_e", "modern")
    anchor = alpha_direct(mass, parse_quantity("1e-6 m"), law, "modern")
    h = REG.lookup("h", "modern")
    checks = [
        ("anchor-within-1-of-h", abs(log10_ratio(anchor, h)) <= 1.0,
         f"{log10_ratio(anchor, h):+.3f}"),
        ("anchor-oracle-1.0e-34",
         abs(math.log10(anchor.si / alpha_at(1e-6))) <= 0.01
         and abs(math.log10(anchor.si / 1.0e-34)) <= 0.5,
         f"{anchor.si:.3e}"),
    ]
    sweep = [
        alpha_direct(mass, Quantity(log_r, LENGTH), law, "modern").log10_magnitude
        for log_r in [(-10 + 0.25 * i) for i in range(33)]  # 1e-10 .. 1e-2
    ]
    variation = max(sweep) - min(sweep)
    checks.append(
        ("flatness-sweep-under-1-decade", variation < 1.0,
         f"variation {variation:.3f} decades over 8 decades of radius "
         f"(R^(1/4) makes exactly 2.0)")
    )
    _finish(7, "screened gamma=-1 optimum and flatness", checks)


def test_criterion_08_screened_gamma2():
    report = evaluate(SPECS["screened-gamma2"], "modern")
    alpha = report.alpha
    hbar_alpha_em = REG.lookup("hbar", "modern") * REG.lookup("alpha_em", "modern")
    rel = abs(alpha.si / hbar_alpha_em.si - 1.0)
    checks = [
        ("matches-hbar-times-alpha_em-5pct", rel <= 0.05, f"rel {rel:.2e}"),
        ("oracle-7.7e-37", abs(math.log10(alpha.si / 7.7e-37)) <= 0.05,
         f"{alpha.si:.3e}"),
        ("prose-discrepancy-note", any("prose" in n for n in report.notes), ""),
    ]
    _finish(8, "screened gamma=-2 action equals e^2/c", checks)


def test_criterion_09_universe_gravity():
    paper = evaluate(SPECS["universe-gravity"], "paper")
    modern = evaluate(SPECS["universe-gravity"], "modern")
    checks = [
        ("alpha-1e-31-half-decade",
         abs(paper.alpha.log10_magnitude - (-31.0)) <= 0.5,
         f"log10 {paper.alpha.log10_magnitude:+.3f}"),
        ("documented-as-2.8-decades", paper.expectation.decades == 2.8,
         str(paper.expectation)),
        ("deviation-asserted-not-hidden",
         paper.decades_from_h > 2.0
         and paper.verdict == "informational"
         and len(paper.notes) > 0,
         f"measured {paper.decades_from_h:+.3f}"),
        ("modern-within-1.5", abs(modern.decades_from_h) <= 1.5,
         f"{modern.decades_from_h:+.3f}"),
    ]
    _finish(9, "gravitationally bound universe reproduces its formula", checks)


def test_criterion_10_thermal_suite():
    checks = []
    # emittance = sqrt(N) Compton lengths, claimed about 2.4e-6 m at N=1e12
    for value_set in ("paper", "modern"):
        length = emittance_length(1e12, value_set)
        checks.append(
            (f"emittance-{value_set}",
             abs(math.log10(length.si / 2.4e-6)) <= 0.5, f"{length.si:.3e}")
        )
    # gas temperature: oracle 1512 K, within a decade of the claimed 1e2..1e3 K
    gas_oracle = (6.6e-34 / 1.38e-23) * math.sqrt(1e23) / 1e-2
    gas = equivalent_temperature(1e23, parse_quantity("1e-2 s"), "paper")
    log_t = gas.log10_magnitude
    distance_to_claim = max(0.0, log_t - 3.0, 2.0 - log_t)
    checks.append(
        ("gas-oracle", abs(gas.si / gas_oracle - 1) <= 1e-6, f"{gas.si:.1f} K")
    )
    checks.append(
        ("gas-within-decade-of-claim", distance_to_claim <= 1.0,
         f"log10 T = {log_t:.3f}")
    )
    # quark temperature within a decade of 1e12 K
    quark = equivalent_temperature(1, parse_quantity("1e-23 s"), "paper")
    checks.append(
        ("quark-temperature", abs(quark.log10_magnitude - 12.0) <= 1.0,
         f"log10 T = {quark.log10_magnitude:.3f}")
    )
    # constituent count within a decade of 1e78 on the documented inputs
    count = constituent_count(
        parse_quantity("1e-27 kg"), parse_quantity("2.7 K"),
        parse_quantity("1e30 m"), "paper",
    )
    checks.append(
        ("nucleon-count-within-1-of-1e78", abs(math.log10(count) - 78.0) <= 1.0,
         f"count {count:.3e}, log10 {math.log10(count):.4f}, "
         f"distance {abs(math.log10(count) - 78.0):.4f}")
    )
    # condensate velocity: oracle 6.6e-4 m/s within 5%, claim gap asserted
    bec_oracle = (1.38e-23 / 6.6e-34) * (1e-6 / math.sqrt(1e7)) * 1e-4
    v = condensate_velocity(
        parse_quantity("1e-6 K"), 1e7, parse_quantity("1e-4 m"), "paper"
    )
    bec_report = evaluate(SPECS["bec-rubidium"], "paper")
    checks.append(
        ("bec-velocity-5pct",
         abs(v.si / bec_oracle - 1) <= 1e-6 and abs(v.si / 6.6e-4 - 1) <= 0.05,
         f"{v.si:.3e} m/s")
    )
    checks.append(
        ("bec-claim-gap-noted", any("1e-2" in n for n in bec_report.notes), "")
    )
    _finish(10, "finite-temperature applications", checks)


def test_criterion_11_property_suites():
    checks = []
    # N-independence of the action estimate
    mass = parse_quantity("1e-27 kg")
    radius = parse_quantity("1e30 m")
    logs = [
        tremor_chain(mass, radius, gravity_law(), n)
        .action_per_particle.log10_magnitude
        for n in (1.0, 1e6, 1e12, 1e24, 1e78)
    ]
    checks.append(
        ("count-independence", max(logs) - min(logs) <= 1e-9,
         f"spread {max(logs) - min(logs):.2e}")
    )
    # per-constituent action equals N^(-3/2) times the total action
    worst = 0.0
    for n in (1.0, 1e3, 1e11, 1e24, 1e78):
        b = tremor_chain(mass, radius, gravity_law(), n)
        gap = abs(
            b.action_per_particle.log10_magnitude
            - (b.total_action.log10_magnitude - 1.5 * math.log10(n))
        )
        worst = max(worst, gap)
    checks.append(("total-action-identity", worst <= 1e-9, f"worst {worst:.2e}"))
    # Keplerian scaling identity for every catalog breakdown
    worst = 0.0
    breakdown_count = 0
    for value_set in ("paper", "modern"):
        for report in check_all(list(SPECS.values()), value_set):
            if report.breakdown is not None:
                breakdown_count += 1
                worst = max(worst, abs(keplerian_check(report.breakdown)))
    checks.append(
        ("keplerian-all-breakdowns", worst <= 1e-9 and breakdown_count >= 10,
         f"worst {worst:.2e} over {breakdown_count}")
    )
    # solver against the integer-grid brute force
    rng = random.Random(20260809)
    for _ in range(200):
        check_solver_agreement(
            rng, solve,
            lambda gens, target: MonomialProblem(generators=gens, target=target),
        )
    checks.append(("solver-vs-brute-force-200", True, ""))
    # 1000-case parser round trip
    rng = random.Random(42)
    worst = 0.0
    for _ in range(1000):
        dim = parse_quantity("1 kg").dim ** F(rng.randint(-8, 8), rng.choice((1, 2, 4)))
        dim = dim * parse_quantity("1 s").dim ** F(rng.randint(-8, 8), 4)
        dim = dim * parse_quantity("1 m").dim ** F(rng.randint(-8, 8), 3)
        q = Quantity(rng.uniform(-60, 60), dim)
        back = parse_quantity(render_quantity(q))
        assert back.dim == q.dim
        worst = max(worst, abs(back.log10_magnitude - q.log10_magnitude))
    checks.append(
        ("parser-round-trip-1000", worst < 1e-12, f"worst {worst:.2e}")
    )
    # dimensional-homogeneity fuzz: mismatches raise, never coerce
    mismatches = 0
    for attempt in (
        lambda: log10_ratio(parse_quantity("1 kg"), parse_quantity("1 m")),
        lambda: force_at(gravity_law(), parse_quantity("1 kg")),
        lambda: alpha_direct(
            parse_quantity("1 m"), parse_quantity("1 m"), coulomb_law()
        ),
        lambda: ForceLaw.checked({"G": "1"}, "-2", {"G": REG.dim("G")}),
        lambda: evaluate_monomial({"h": F(1)}, "paper", REG)
        / evaluate_monomial({"e": F(1)}, "paper", REG)
        + 1,  # addition is not defined for quantities
    ):
        try:
            attempt()
        except (DimensionMismatch, TypeError):
            mismatches += 1
    checks.append(("mismatches-always-raise", mismatches == 5, f"{mismatches}/5"))
    _finish(11, "property suites", checks)


def test_criterion_12_determinism():
    runner = CliRunner()
    checks = []
    for value_set in ("paper", "modern"):
        first = runner.invoke(cli_main, ["--set", value_set, "--format", "json", "check-all"])
        second = runner.invoke(cli_main, ["--set", value_set, "--format", "json", "check-all"])
        identical = first.output == second.output and first.exit_code == 0
        payload = json.loads(first.output)
        checks.append(
            (f"byte-identical-{value_set}",
             identical and len(payload["reports"]) == 15, "")
        )
    _finish(12, "repeated machine runs are byte-identical", checks)
