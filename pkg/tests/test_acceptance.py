"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import math
import time
from fractions import Fraction
from math import comb, factorial

from rumortree import (
    ModelParams,
    extinction_fixed_point,
    offspring_mean,
    offspring_pmf,
    progeny_mean,
    progeny_pmf,
    root_pmf,
    stifling_sum_S,
    stifling_sum_Sstar,
    survival_probability,
)
from rumortree import range_bounds as rb
from rumortree.simulate import monte_carlo

F = Fraction
SEED = 20240601

PRINTED_TABLE = {
    (2, 1): 0.000000, (3, 1): 0.661289, (4, 1): 0.869802, (5, 1): 0.931135,
    (6, 1): 0.957300, (7, 1): 0.970887, (50, 1): 0.999583,
    (2, 2): 0.937500, (3, 2): 0.991439, (4, 2): 0.997434, (5, 2): 0.998936,
    (6, 2): 0.999474, (7, 2): 0.999708, (50, 2): 0.999999,
}
PRINTED_SERIES = {
    "lower_p1": 4.4619, "upper_p1": 4.9792,
    "lower_p2": 2.0982, "upper_p2": 2.3592,
    "lower_p3": 1.5189, "upper_p3": 1.6804,
}


def _tv(x, y):
    return 0.5 * sum(abs(x.get(v, 0) - y.get(v, 0)) for v in set(x) | set(y))


def test_c01_table_regression(verdict):
    t0 = time.perf_counter()
    computed = {cell: survival_probability(ModelParams(*cell)) for cell in PRINTED_TABLE}
    elapsed = time.perf_counter() - t0
    off = {cell: abs(computed[cell] - v) for cell, v in PRINTED_TABLE.items()}
    bad = sorted(cell for cell, e in off.items() if e > 5e-7)
    detail = ", ".join(f"{c} printed {PRINTED_TABLE[c]:.6f} got {computed[c]:.9f}" for c in bad)
    verdict("criterion 1 (survival table within 5e-7, < 10 s)",
            not bad and elapsed < 10,
            f"{14 - len(bad)}/14 cells match, max |diff| {max(off.values()):.2e}, "
            f"{elapsed:.2f} s" + (f"; mismatches: {detail}" if bad else ""))


def test_c02_exact_fixture(verdict):
    p = ModelParams(2, 2)
    assert dict(offspring_pmf(p)) == {0: F(1, 9), 1: F(4, 9), 2: F(4, 9)}
    psi = extinction_fixed_point(p).psi
    theta = survival_probability(p)
    ok = abs(psi - 0.25) <= 1e-10 and abs(theta - 0.9375) <= 1e-10
    verdict("criterion 2 (psi(2,2)=1/4, theta(2,2)=15/16 within 1e-10)", ok,
            f"|psi-0.25|={abs(psi - 0.25):.1e}, |theta-0.9375|={abs(theta - 0.9375):.1e}")


def _theta_from_closed_forms(d):
    # k = 3 laws built from the closed-form nested sums, root found by bisection
    s3 = lambda i: F((i + 1) * (i + 2) * (3 * i * i + 13 * i + 12), 24)  # noqa: E731
    s3star = lambda i: F(i * (i + 1) * (3 * i * i + 7 * i + 2), 24)  # noqa: E731
    off = [comb(d, i) * factorial(i + 1) * s3(i) / F((d + 1) ** (i + 3)) for i in range(d + 1)]
    root = {i: i * factorial(i) * comb(d + 1, i) * s3star(i) / F((d + 1) ** (i + 3))
            for i in range(1, d + 2)}
    assert sum(off) == 1 and sum(root.values()) == 1
    phi = lambda s: sum(float(m) * s ** i for i, m in enumerate(off))  # noqa: E731
    # phi(s) - s > 0 below psi and < 0 between psi and 1 (supercritical)
    lo, hi = 0.0, 1.0 - 1e-9
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if phi(mid) > mid else (lo, mid)
    psi = (lo + hi) / 2
    return 1 - sum(float(m) * psi ** i for i, m in root.items())


def test_c03_theta_2_3(verdict):
    forms_agree = all(
        stifling_sum_S(i, 3) == (i + 1) * (i + 2) * (3 * i * i + 13 * i + 12) // 24
        and stifling_sum_Sstar(i + 1, 3) == (i + 1) * (i + 2) * (3 * (i + 1) ** 2 + 7 * (i + 1) + 2) // 24
        for i in range(200))
    independent = _theta_from_closed_forms(2)
    theta = survival_probability(ModelParams(2, 3))
    ok = forms_agree and abs(theta - 0.9964) <= 5e-5 and abs(independent - theta) <= 1e-10
    verdict("criterion 3 (theta(2,3)=0.9964 within 5e-5, closed forms vs DP)", ok,
            f"theta={theta:.10f}, closed-form route {independent:.10f}, "
            f"sums agree for i<200: {forms_agree}")


def test_c04_phase_transition(verdict):
    zero = survival_probability(ModelParams(2, 1))
    positive = {d: survival_probability(ModelParams(d, 1)) for d in range(3, 11)}
    mean = offspring_mean(ModelParams(2, 1))
    ok = zero == 0.0 and all(v > 0 for v in positive.values()) and mean == F(8, 9)
    verdict("criterion 4 (phase transition at d=3 for k=1)", ok,
            f"theta(2,1)={zero!r}, min theta(d,1) d=3..10 = {min(positive.values()):.6f}, "
            f"mean(2,1)={mean}")


def _coefficient_form(i_max):
    g = [F(3, 9), F(4, 9), F(2, 9)]
    out, power = {}, [F(1)]
    for i in range(1, i_max + 1):
        nxt = [F(0)] * (len(power) + 2)
        for a, x in enumerate(power):
            for b, y in enumerate(g):
                nxt[a + b] += x * y
        power = nxt
        c = lambda j: power[j] if 0 <= j < len(power) else 0  # noqa: E731
        out[i] = (3 * c(i - 1) + 8 * c(i - 2) + 6 * c(i - 3)) / (9 * i)
    return out


def test_c05_progeny(verdict):
    t0 = time.perf_counter()
    p = ModelParams(2, 1)
    pmf = progeny_pmf(p, 2000)
    form = _coefficient_form(50)
    means = progeny_mean(p)
    truncated = sum(i * float(m) for i, m in pmf)
    elapsed = time.perf_counter() - t0
    checks = {
        "P(T=1)=1/9": pmf[1] == F(1, 9),
        "P(T=2)=8/81": pmf[2] == F(8, 81),
        "coefficient form i<=50": all(pmf[i] == form[i] for i in range(1, 51)),
        "E[T]=17": means.informed == 17,
        "E[S]=18": means.stiflers == 18,
        "truncated mean": abs(truncated - 17) <= 1e-6,
        "runtime": elapsed < 30,
    }
    verdict("criterion 5 (progeny law and means)", all(checks.values()),
            f"truncated mean at 2000 = {truncated:.10f}, {elapsed:.1f} s, "
            f"failed: {[k for k, v in checks.items() if not v]}")


def test_c06_range_constants(verdict):
    bounds = rb.expected_range_bounds()
    constants = bounds.constants()
    diffs = {k: abs(constants[k] - v) for k, v in PRINTED_SERIES.items()}
    # enclosure constants are printed rounded outward: lower down, upper up
    directed = all(
        (math.floor if k.startswith("lower") else math.ceil)(constants[k] * 1e4) / 1e4 == v
        for k, v in PRINTED_SERIES.items())
    ok = (max(diffs.values()) < 1e-4 and directed
          and abs(bounds.lower - 6.144) <= 1e-3 and abs(bounds.upper - 7.448) <= 1e-3)
    verdict("criterion 6 (series constants at 4 dp, E(R) in [6.144, 7.448] within 1e-3)", ok,
            f"max constant diff {max(diffs.values()):.1e}, outward-rounded match {directed}, "
            f"E(R) in [{bounds.lower:.5f}, {bounds.upper:.5f}]")


def test_c07_certificates(verdict):
    grid = [F(j, 1000) for j in range(1000)]
    checks = {
        "L(1)=U(1)=1": rb.LOWER_GF(F(1)) == 1 and rb.UPPER_GF(F(1)) == 1,
        "L'(1)=U'(1)=8/9": rb.LOWER_GF.derivative(F(1)) == F(8, 9)
        and rb.UPPER_GF.derivative(F(1)) == F(8, 9),
        "h<0": all(rb.h_criterion(s) < 0 for s in grid),
        "L<=phi<=U": all(rb.LOWER_GF(s) <= rb.offspring_gf(s) <= rb.UPPER_GF(s) for s in grid),
    }
    worst = 0.0
    for n in range(61):
        a1, a2 = rb.extinction_time_cdf_bounds(n)
        worst = max(worst, abs(float(rb.LOWER_GF.iterate(n, F(0))) - a1),
                    abs(float(rb.UPPER_GF.iterate(n, F(0))) - a2))
    checks["composition"] = worst <= 1e-10
    verdict("criterion 7 (bounding-GF certificates)", all(checks.values()),
            f"exact checks on a 1000-point grid; composition max |diff| {worst:.1e} for n<=60; "
            f"failed: {[k for k, v in checks.items() if not v]}")


def test_c08_simulator_vs_analytics(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for d, k in ((2, 1), (2, 2), (3, 1)):
        p = ModelParams(d, k)
        s = monte_carlo(p, 100_000, 2, "genealogy", SEED)
        worst = max(worst, root_pmf(p).tv_distance(s.root_offspring_pmf()),
                    offspring_pmf(p).tv_distance(s.offspring_pmf()))
    full = monte_carlo(ModelParams(2, 1), 100_000, None, "genealogy", SEED)
    mean = full.informed_total_mean()
    z = (mean.mean - 17) / mean.stderr
    outside = []
    for n in range(1, 9):
        est = full.range_cdf(n)
        lo, hi = rb.range_cdf_bounds(n)
        if not lo - 3 * est.stderr <= est.mean <= hi + 3 * est.stderr:
            outside.append(n)
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.01 and abs(z) <= 3 and not outside and full.failures == 0 and elapsed < 120
    verdict("criterion 8 (simulated laws vs exact, 1e5 runs, < 2 min)", ok,
            f"max TV {worst:.4f}, E[T] = {mean.mean:.3f} +- {mean.stderr:.3f} (z={z:+.2f}), "
            f"range cdf outside bounds at n={outside}, {elapsed:.1f} s")


def test_c09_engine_equivalence(verdict):
    worst = 0.0
    for d, k in ((2, 1), (2, 2), (3, 1)):
        p = ModelParams(d, k)
        a = monte_carlo(p, 50_000, 8, "jumpchain", SEED)
        b = monte_carlo(p, 50_000, 8, "genealogy", SEED + 1)
        worst = max(worst, _tv(a.root_offspring_pmf(), b.root_offspring_pmf()),
                    _tv(a.max_depth_pmf(), b.max_depth_pmf()))
    verdict("criterion 9 (jump chain vs genealogy TV <= 0.02)", worst <= 0.02,
            f"max TV {worst:.4f} over root_offspring and max_depth, 5e4 runs each, depth 8")


def test_c10_monotonicity(verdict):
    theta = {(d, k): survival_probability(ModelParams(d, k))
             for d in range(2, 11) for k in (1, 2, 3)}
    in_d = all(theta[d + 1, k] >= theta[d, k] for d in range(2, 10) for k in (1, 2, 3))
    in_k = all(theta[d, k + 1] >= theta[d, k] for d in range(2, 11) for k in (1, 2))
    big = survival_probability(ModelParams(50, 1))
    verdict("criterion 10 (theta monotone in d and k, theta(50,1) >= 0.9995)",
            in_d and in_k and big >= 0.9995,
            f"monotone in d: {in_d}, in k: {in_k}, theta(50,1)={big:.6f}")
