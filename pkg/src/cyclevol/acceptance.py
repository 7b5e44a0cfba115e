"""The acceptance suite: every release-gating check, runnable in one call.

Each criterion function returns a :class:`CriterionResult` with a
pass/fail flag and a measured-vs-expected detail string; ``run_all``
executes them in order and optionally prints one line per criterion.
Randomized sweeps use fixed seeds, so the suite is deterministic.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from . import bounds as _bounds
from . import constants as _constants
from . import seshadri as _seshadri
from . import volhat as _volhat
from .cycles import CycleClass, DivisorClass, VarietySpec, divisor_power, vol_divisor
from .powerprod import PowerProduct


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _ones(variety: VarietySpec) -> DivisorClass:
    return DivisorClass(variety, tuple(Fraction(1) for _ in range(variety.r)))


def _random_big_divisor(variety: VarietySpec, rng: random.Random) -> DivisorClass:
    coords = tuple(Fraction(rng.randint(1, 12), rng.randint(1, 3)) for _ in range(variety.r))
    return DivisorClass(variety, coords)


# -- criterion 1 ------------------------------------------------------------


def criterion_1_constants() -> CriterionResult:
    start = time.perf_counter()
    failures = []
    for n in range(1, 21):
        if _constants.epsilon(n, n - 1) != 1 or _constants.tau(n, n - 1) != 1:
            failures.append(f"base case at n={n}")
    for (n, k), expected in (((3, 1), Fraction(1, 2)), ((4, 2), Fraction(1, 4))):
        if _constants.epsilon(n, k) != expected:
            failures.append(f"epsilon({n},{k}) != {expected}")
    if _constants.tau(4, 2) != Fraction(1, 4):
        failures.append("tau(4,2) != 1/4")
    checked = 0
    for n in range(1, 21):
        for k in range(n):
            if k == 0 and n >= 2:
                # the printed recursion divides by zero on this column
                # (epsilon(1,0) = 1 makes the (2,0) denominator vanish);
                # the table refuses the pair instead of inventing a value
                try:
                    _constants.epsilon(n, k)
                    failures.append(f"epsilon({n},0) unexpectedly defined")
                except _constants.DegenerateRecursionError:
                    pass
                continue
            e, t = _constants.epsilon(n, k), _constants.tau(n, k)
            checked += 1
            if not (0 < t <= e <= Fraction(1, n - k)):
                failures.append(f"inequality fails at ({n},{k})")
    elapsed = time.perf_counter() - start
    detail = (
        f"base cases + derived values ok; 0 < tau <= eps <= 1/(n-k) on all {checked} "
        f"defined pairs with n <= 20 (k = 0 column degenerates for n >= 2, by construction); "
        f"{elapsed:.3f}s"
    )
    if failures:
        detail = "; ".join(failures)
    return CriterionResult(1, "recursion constants table", not failures and elapsed < 1.0, detail, elapsed)


# -- criterion 2 ------------------------------------------------------------


def criterion_2_divisor_counts() -> CriterionResult:
    start = time.perf_counter()
    p2 = VarietySpec((2,))
    failures = []
    for d in range(1, 11):
        got = _bounds.mc_divisor_exact(DivisorClass.of(p2, (d,)))
        if got != comb(d + 2, 2) - 1:
            failures.append(f"d={d}: {got}")
    got1 = _bounds.mc_divisor_exact(DivisorClass.of(p2, (1,)))
    got2 = _bounds.mc_divisor_exact(DivisorClass.of(p2, (2,)))
    if (got1, got2) != (2, 5):
        failures.append(f"(d=1,d=2) -> {(got1, got2)} != (2, 5)")
    elapsed = time.perf_counter() - start
    detail = f"mc(O(d)) = C(d+2,2)-1 for d <= 10; d=1 -> {got1}, d=2 -> {got2}"
    if failures:
        detail = "; ".join(failures)
    return CriterionResult(2, "exact divisor mobility counts", not failures, detail, elapsed)


# -- criterion 3 ------------------------------------------------------------


def criterion_3_ci_convergence() -> CriterionResult:
    start = time.perf_counter()
    p3 = VarietySpec((3,))
    H = DivisorClass.of(p3, (1,))
    failures = []
    measured = []
    for m in (10, 50, 200):
        points, _ = _bounds.mob_ci_lower(H, 1, m)
        err = abs(Fraction(6 * points, m**3) - 1)
        measured.append(f"m={m}: |6 pts/m^3 - 1| = {float(err):.5f}")
        if err > Fraction(7, m):
            failures.append(f"m={m}: error {err} > 7/{m}")
    elapsed = time.perf_counter() - start
    detail = "; ".join(measured) + " (tolerance 7/m)"
    if failures:
        detail = "; ".join(failures)
    return CriterionResult(3, "complete-intersection lower-bound convergence", not failures and elapsed < 1.0, detail, elapsed)


# -- criterion 4 ------------------------------------------------------------

_SUP_INSTANCES: list[tuple[CycleClass, Fraction]] = []  # (alpha, computed value); reused by criterion 10


def criterion_4_volhat_equalities() -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(40218)
    failures = []
    _SUP_INSTANCES.clear()
    count = 0
    for dims in ((3,), (1, 1), (1, 1, 1)):
        variety = VarietySpec(dims)
        n = variety.n
        for k in range(1, n):
            for _ in range(50):
                B = _random_big_divisor(variety, rng)
                alpha = divisor_power(B, n - k)
                res = _volhat.volhat_sup(alpha)
                _SUP_INSTANCES.append((alpha, res.value))
                count += 1
                vol = vol_divisor(B)
                if abs(res.value - vol) > Fraction(1, 10**4) * vol:
                    failures.append(f"sup([B^{n - k}]) != vol(B) at B={B}")
    p1p1 = VarietySpec((1, 1))
    xiao_worst = 0.0
    for a in range(1, 11):
        for b in range(1, 11):
            alpha = CycleClass.from_dict(p1p1, 1, {(1, 0): Fraction(a), (0, 1): Fraction(b)})
            res = _volhat.volhat_curve_xiao(alpha)
            _SUP_INSTANCES.append((alpha, res.value))
            err = abs(float(res.value) - 2 * a * b)
            xiao_worst = max(xiao_worst, err)
            if err > 1e-6:
                failures.append(f"xiao({a},{b}) err {err:.2e}")
    elapsed = time.perf_counter() - start
    detail = (
        f"{count} sup instances within 1e-4 of vol(B); xiao worst |err| = {xiao_worst:.2e} "
        f"(<= 1e-6) over a,b <= 10; {elapsed:.1f}s (< 30s)"
    )
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(4, "volhat equality cases", not failures and elapsed < 30.0, detail, elapsed)


# -- criterion 5 ------------------------------------------------------------


def criterion_5_kt_sweep() -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(51102)
    violations = 0
    checks = 0
    rosters = ((2,), (3,), (5,), (1, 1), (2, 1), (1, 1, 1), (2, 2), (2, 2, 1))
    for dims in rosters:
        variety = VarietySpec(dims)
        n = variety.n
        for _ in range(1000):
            A = DivisorClass.of(variety, [rng.randint(0, 10) for _ in dims])
            B = DivisorClass.of(variety, [rng.randint(0, 10) for _ in dims])
            k = rng.randint(0, n)
            checks += 1
            if not _volhat.kt_check(A, B, k).holds:
                violations += 1
    elapsed = time.perf_counter() - start
    detail = f"{checks} random nef pairs over {len(rosters)} varieties, {violations} violations; {elapsed:.1f}s (< 5s)"
    return CriterionResult(5, "Khovanskii-Teissier sweep", violations == 0 and elapsed < 5.0, detail, elapsed)


# -- criterion 6 ------------------------------------------------------------


def criterion_6_weak_duality() -> CriterionResult:
    start = time.perf_counter()
    rng = random.Random(61743)
    failures = []
    worst_gap = Fraction(0)
    p2 = VarietySpec((2,))
    p1p1 = VarietySpec((1, 1))
    for _ in range(200):
        q = Fraction(rng.randint(1, 100), rng.randint(1, 10))
        alpha = CycleClass.from_dict(p2, 1, {(1,): q})
        gap = _volhat.weak_duality_check(alpha)
        _SUP_INSTANCES.append((alpha, gap.sup_value))
        if gap.sup_value > gap.inf_value + Fraction(1, 10**6):
            failures.append(f"duality violated on P2 at {q}")
        worst_gap = max(worst_gap, abs(gap.gap))
    for _ in range(200):
        a = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        b = Fraction(rng.randint(1, 40), rng.randint(1, 4))
        alpha = CycleClass.from_dict(p1p1, 1, {(1, 0): a, (0, 1): b})
        gap = _volhat.weak_duality_check(alpha)
        _SUP_INSTANCES.append((alpha, gap.sup_value))
        if gap.sup_value > gap.inf_value + Fraction(1, 10**6):
            failures.append(f"duality violated on P1xP1 at ({a},{b})")
        if abs(gap.gap) > Fraction(1, 10**4) * max(1, gap.inf_value):
            failures.append(f"gap too large at ({a},{b}): {float(gap.gap):.2e}")
        worst_gap = max(worst_gap, abs(gap.gap) / max(1, gap.inf_value))
    elapsed = time.perf_counter() - start
    detail = f"400 curve classes; sup <= inf + 1e-6 everywhere; worst relative gap {float(worst_gap):.2e} (<= 1e-4)"
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(6, "weak duality on surfaces", not failures, detail, elapsed)


# -- criterion 7 ------------------------------------------------------------


def criterion_7_homogeneity() -> CriterionResult:
    start = time.perf_counter()
    failures = []
    p3 = VarietySpec((3,))
    p1p1 = VarietySpec((1, 1))
    p111 = VarietySpec((1, 1, 1))
    ell = CycleClass.from_dict(p3, 2, {(2,): Fraction(1)})
    instances = [
        ell,
        CycleClass.from_dict(p1p1, 1, {(1, 0): Fraction(2), (0, 1): Fraction(3)}),
        divisor_power(DivisorClass.of(p111, (2, 1, 3)), 2),
        divisor_power(DivisorClass.of(p3, (2,)), 1),
    ]
    for alpha in instances:
        for c in (Fraction(1, 2), Fraction(2), Fraction(3)):
            if not _volhat.volhat_homogeneity_check(alpha, c, Fraction(1, 10**4)):
                failures.append(f"volhat law fails at c={c} on {alpha.variety}")
    # the spot value volhat(2 ell) = 2^(3/2)
    doubled = _volhat.volhat_sup(2 * ell).value
    target = PowerProduct.power(2, Fraction(3, 2))
    if not (target.lower(10) - Fraction(1, 10**4) <= doubled <= target.upper(10) + Fraction(1, 10**4)):
        failures.append("volhat(2 ell) != 2^(3/2)")
    # exact rescaling law for the bound formulas: B(a alpha, a s) = a^(n/(n-k)) B(alpha, s)
    H = DivisorClass.of(p3, (1,))
    for a in (2, 3, 5):
        for s in (2, 7):
            lhs = _bounds.mc_upper_precise(a * ell, H, a * s, 1).value
            rhs = PowerProduct.power(a, Fraction(3, 2)) * _bounds.mc_upper_precise(ell, H, s, 1).value
            if lhs != rhs:
                failures.append(f"mc variant-1 rescaling not exact at a={a}, s={s}")
            wl = _seshadri.wmc_upper_precise(a * ell, H, a * s, 1).value
            wr = PowerProduct.power(a, Fraction(3, 2)) * _seshadri.wmc_upper_precise(ell, H, s, 1).value
            if wl != wr:
                failures.append(f"wmc variant-1 rescaling not exact at a={a}, s={s}")
    elapsed = time.perf_counter() - start
    detail = "volhat(c alpha) = c^(n/(n-k)) volhat(alpha) within 1e-4 for c in {1/2, 2, 3}; bound rescaling exact"
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(7, "homogeneity laws", not failures, detail, elapsed)


# -- criterion 8 ------------------------------------------------------------


def criterion_8_seshadri_collapse() -> CriterionResult:
    start = time.perf_counter()
    p2 = VarietySpec((2,))
    A = DivisorClass.of(p2, (1,))
    failures = []
    for t in range(1, 21):
        est = _seshadri.seshadri_interval(t * t, A)
        if not (est.t == t and est.lo == Fraction(1, t) and est.collapsed):
            failures.append(f"t={t}: interval [{est.lo}, {float(est.hi)}]")
    elapsed = time.perf_counter() - start
    detail = "interval endpoints coincide exactly at b = t^2 for t <= 20"
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(8, "Seshadri interval collapse", not failures, detail, elapsed)


# -- criterion 9 ------------------------------------------------------------


def criterion_9_wmob_sandwich() -> CriterionResult:
    start = time.perf_counter()
    p3 = VarietySpec((3,))
    H = DivisorClass.of(p3, (1,))
    failures = []
    lower, upper = _seshadri.wmob_ci_bounds(H, 1, 50)
    # expected ratio built independently of the implementation under test
    expected_ratio = PowerProduct.power(Fraction(49, 50), Fraction(3 * 1, 3 - 1))
    ratio = lower / PowerProduct.of(upper)
    if ratio != expected_ratio:
        failures.append("gap identity is not exact at t = 50")
    if not ratio > Fraction(97, 100):  # gap < 0.03
        failures.append(f"gap at t=50 is {1 - float(ratio):.4f} >= 0.03")
    envelope = _seshadri.wmc_upper(divisor_power(H, 2), H).value
    if not (lower <= PowerProduct.of(upper) <= envelope):
        failures.append("sandwich endpoints leave the wmc envelope")
    prev = None
    for t in (2, 3, 5, 10, 50, 200):
        lo_t, _ = _seshadri.wmob_ci_bounds(H, 1, t)
        if prev is not None and not prev <= lo_t:
            failures.append(f"lower bound not monotone at t={t}")
        prev = lo_t
    elapsed = time.perf_counter() - start
    gap = 1 - float(ratio)
    detail = f"gap(t=50) = {gap:.4f} < 0.03, identity exact, endpoints inside envelope, lower monotone in t"
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(9, "weighted-mobility sandwich", not failures, detail, elapsed)


# -- criterion 10 -----------------------------------------------------------


def criterion_10_cross_ordering() -> CriterionResult:
    start = time.perf_counter()
    failures = []
    checked = 0
    if not _SUP_INSTANCES:
        return CriterionResult(10, "volhat below mobility bound", False, "no instances collected", 0.0)
    for alpha, value in _SUP_INSTANCES:
        A = _ones(alpha.variety)
        s = _bounds.minimal_s(alpha, A)
        bound = _bounds.mob_level_upper(alpha, A, s)
        checked += 1
        if not PowerProduct.of(value) <= bound:
            failures.append(f"ordering fails on {alpha}")
    elapsed = time.perf_counter() - start
    detail = f"volhat <= n! 2^(kn+3n) s^(n/(n-k)) A^n on all {checked} suite instances"
    if failures:
        detail = "; ".join(failures[:4])
    return CriterionResult(10, "volhat below mobility bound", not failures, detail, elapsed)


_CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1_constants,
    criterion_2_divisor_counts,
    criterion_3_ci_convergence,
    criterion_4_volhat_equalities,
    criterion_5_kt_sweep,
    criterion_6_weak_duality,
    criterion_7_homogeneity,
    criterion_8_seshadri_collapse,
    criterion_9_wmob_sandwich,
    criterion_10_cross_ordering,
)


def run_all(verbose: bool = True) -> list[CriterionResult]:
    total_start = time.perf_counter()
    results = []
    for fn in _CRITERIA:
        res = fn()
        results.append(res)
        if verbose:
            flag = "PASS" if res.passed else "FAIL"
            print(f"criterion {res.index:2d} [{flag}] {res.name}: {res.detail}")
    total = time.perf_counter() - total_start
    if verbose:
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} criteria passed in {total:.1f}s")
    return results
