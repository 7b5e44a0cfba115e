import random
from fractions import Fraction as F

import pytest

from cyclevol.bounds import minimal_s, mob_level_upper
from cyclevol.cycles import (
    CycleClass,
    DivisorClass,
    VarietySpec,
    divisor_power,
    vol_divisor,
)
from cyclevol.powerprod import PowerProduct as PP
from cyclevol.volhat import (
    kt_check,
    verify_sup_feasibility,
    volhat_curve_xiao,
    volhat_homogeneity_check,
    volhat_sup,
    weak_duality_check,
)

P2 = VarietySpec((2,))
P3 = VarietySpec((3,))
P1P1 = VarietySpec((1, 1))
P111 = VarietySpec((1, 1, 1))


def curve(variety, a, b):
    """The (a,b) curve class on a two-factor product: a at (1,0), b at (0,1)."""
    return CycleClass.from_dict(variety, variety.n - 1, {(1, 0): F(a), (0, 1): F(b)})


# -- sup formulation -----------------------------------------------------------


def test_sup_on_complete_intersections_equals_volume():
    rng = random.Random(7)
    for dims in ((3,), (1, 1), (1, 1, 1), (2, 1)):
        variety = VarietySpec(dims)
        n = variety.n
        for k in range(1, n):
            for _ in range(5):
                B = DivisorClass.of(
                    variety, [F(rng.randint(1, 9), rng.randint(1, 3)) for _ in dims]
                )
                res = volhat_sup(divisor_power(B, n - k))
                assert res.status == "converged"
                vol = vol_divisor(B)
                assert abs(res.value - vol) <= F(1, 10**6) * vol


def test_sup_curve_example_on_p1p1():
    res = volhat_sup(curve(P1P1, 1, 1))
    assert res.value == 2  # the maximizer x = y = 1 is a lattice point
    assert res.argopt.coords == (F(1), F(1))


def test_sup_line_class_and_its_multiples():
    ell = CycleClass.from_dict(P3, 2, {(2,): F(1)})
    assert volhat_sup(ell).value == 1
    doubled = volhat_sup(2 * ell).value
    target = PP.power(2, F(3, 2))
    assert target.lower(10) - F(1, 10**6) <= doubled <= target.upper(10)


def test_sup_points_case_is_linear():
    # k = 0: the only constraint is vol(A) <= deg(alpha)
    pts = CycleClass.from_dict(P1P1, 2, {(1, 1): F(5)})
    res = volhat_sup(pts)
    assert abs(res.value - 5) <= F(5, 10**6)


def test_sup_statuses():
    not_psef = CycleClass.from_dict(P1P1, 1, {(1, 0): F(-1)})
    res = volhat_sup(not_psef)
    assert res.status == "infeasible" and res.value == 0

    boundary = curve(P1P1, 1, 0)
    res = volhat_sup(boundary)
    assert res.status == "infeasible" and res.value == 0

    with pytest.raises(ValueError):
        volhat_sup(divisor_power(DivisorClass.of(P3, (1,)), 0))


def test_sup_argopt_is_exactly_feasible():
    rng = random.Random(11)
    for _ in range(10):
        alpha = CycleClass.from_dict(
            P111,
            2,
            {m: F(rng.randint(1, 30), rng.randint(1, 7)) for m in P111.monomials(2)},
        )
        res = volhat_sup(alpha)
        assert res.status == "converged"
        assert verify_sup_feasibility(alpha, res.argopt)
        assert vol_divisor(res.argopt) == res.value


def test_sup_monotone_in_the_class():
    rng = random.Random(13)
    for _ in range(10):
        a = curve(P1P1, F(rng.randint(1, 9)), F(rng.randint(1, 9)))
        b = curve(P1P1, F(rng.randint(1, 9)), F(rng.randint(1, 9)))
        lhs = volhat_sup(a + b).value
        assert lhs >= volhat_sup(b).value - F(1, 10**6)
    # beta need not itself be pseudo-effective
    a = curve(P1P1, 5, 5)
    b = curve(P1P1, -1, 2)
    assert volhat_sup(a + b).value >= volhat_sup(b).value


def test_sup_positive_on_big_classes():
    rng = random.Random(17)
    for dims in ((2,), (1, 1), (1, 1, 1)):
        variety = VarietySpec(dims)
        for codim in range(1, variety.n + 1):
            coeffs = {
                m: F(rng.randint(1, 20), rng.randint(1, 5)) for m in variety.monomials(codim)
            }
            res = volhat_sup(CycleClass.from_dict(variety, codim, coeffs))
            assert res.value > 0


def test_sup_boundary_vanishing_along_a_segment():
    big = curve(P1P1, 1, 1)
    boundary = curve(P1P1, 0, 1)
    prev = None
    for t in (F(0), F(1, 2), F(9, 10), F(99, 100)):
        alpha = (1 - t) * big + t * boundary
        value = volhat_sup(alpha).value  # closed form 2 * 1 * (1 - t)
        assert abs(value - 2 * (1 - t)) <= F(1, 10**5)
        if prev is not None:
            assert value <= prev + F(1, 10**6)
        prev = value
    assert volhat_sup(boundary).value == 0


# -- Xiao inf formulation --------------------------------------------------------


def test_xiao_line_class_on_projective_spaces():
    for n in (2, 3, 4):
        variety = VarietySpec((n,))
        ell = CycleClass.from_dict(variety, n - 1, {(n - 1,): F(1)})
        res = volhat_curve_xiao(ell)
        assert res.status == "converged"
        assert abs(res.value - 1) < F(1, 10**9)


def test_xiao_closed_form_on_p1p1():
    for a, b in ((1, 1), (2, 3), (7, 2), (10, 10)):
        res = volhat_curve_xiao(curve(P1P1, a, b))
        assert abs(res.value - 2 * a * b) < F(1, 10**6)
        # minimizer satisfies x b = y a up to descent tolerance
        x, y = res.argopt.coords
        assert abs(float(x * b - y * a)) < 1e-4 * float(max(x * b, y * a))


def test_xiao_boundary_class():
    res = volhat_curve_xiao(curve(P1P1, 1, 0))
    assert res.value == 0 and res.status == "boundary"
    zero = CycleClass.zero_class(P1P1, 1)
    assert volhat_curve_xiao(zero).value == 0


def test_xiao_three_factor_descent_matches_sup():
    rng = random.Random(23)
    for _ in range(5):
        B = DivisorClass.of(P111, [F(rng.randint(1, 6)) for _ in range(3)])
        alpha = divisor_power(B, 2)
        inf_res = volhat_curve_xiao(alpha)
        vol = vol_divisor(B)
        assert abs(inf_res.value - vol) <= F(1, 10**3) * vol


def test_xiao_rejects_wrong_input():
    with pytest.raises(ValueError):
        volhat_curve_xiao(CycleClass.from_dict(P3, 1, {(1,): F(1)}))
    with pytest.raises(ValueError):
        volhat_curve_xiao(curve(P1P1, -1, 1))


# -- inequality oracles ------------------------------------------------------------


def test_kt_equality_at_equal_divisors():
    A = DivisorClass.of(P1P1, (2, 3))
    for k in range(0, 3):
        out = kt_check(A, A, k)
        assert out.holds
        assert PP.of(out.lhs) == out.rhs_exact


def test_kt_worked_example():
    out = kt_check(DivisorClass.of(P1P1, (1, 2)), DivisorClass.of(P1P1, (2, 1)), 1)
    assert out.lhs == 5
    assert out.rhs_exact == PP.of(4)
    assert out.holds


def test_kt_random_sweep():
    rng = random.Random(29)
    for dims in ((2,), (1, 1), (2, 1), (1, 1, 1), (3, 2)):
        variety = VarietySpec(dims)
        for _ in range(100):
            A = DivisorClass.of(variety, [rng.randint(0, 10) for _ in dims])
            B = DivisorClass.of(variety, [rng.randint(0, 10) for _ in dims])
            k = rng.randint(0, variety.n)
            assert kt_check(A, B, k).holds


def test_kt_rejects_non_nef():
    with pytest.raises(ValueError):
        kt_check(DivisorClass.of(P1P1, (1, -1)), DivisorClass.of(P1P1, (1, 1)), 1)


def test_homogeneity_check():
    ell = CycleClass.from_dict(P3, 2, {(2,): F(1)})
    for c in (F(1), F(1, 2), F(2), F(3)):
        assert volhat_homogeneity_check(ell, c)
    assert volhat_homogeneity_check(curve(P1P1, 2, 3), F(2))


def test_weak_duality_closed_forms():
    gap = weak_duality_check(curve(P1P1, 1, 1))
    assert gap.sup_value <= gap.inf_value + F(1, 10**6)
    assert abs(gap.sup_value - 2) <= F(1, 10**5) and abs(gap.inf_value - 2) <= F(1, 10**5)

    gap = weak_duality_check(curve(P1P1, 2, 3))
    assert abs(gap.sup_value - 12) <= F(1, 10**4)

    for d in (1, 4, 7):
        alpha = CycleClass.from_dict(P2, 1, {(1,): F(d)})
        gap = weak_duality_check(alpha)
        assert abs(gap.sup_value - d * d) <= F(1, 10**4)
        assert abs(gap.gap) <= F(1, 10**4)


def test_weak_duality_holds_on_threefold_products():
    # both cones are simplicial here, so the two formulations agree
    rng = random.Random(37)
    for _ in range(8):
        coeffs = {m: F(rng.randint(1, 9), rng.randint(1, 3)) for m in P111.monomials(2)}
        gap = weak_duality_check(CycleClass.from_dict(P111, 2, coeffs))
        assert gap.sup_value <= gap.inf_value + F(1, 10**6)
        assert abs(gap.gap) <= F(1, 10**6) * max(1, gap.inf_value)


def test_sup_stays_below_the_mobility_bound():
    rng = random.Random(31)
    for dims in ((3,), (1, 1), (1, 1, 1)):
        variety = VarietySpec(dims)
        ones = DivisorClass.of(variety, [1] * variety.r)
        for codim in range(1, variety.n):
            coeffs = {
                m: F(rng.randint(1, 9), rng.randint(1, 3)) for m in variety.monomials(codim)
            }
            alpha = CycleClass.from_dict(variety, codim, coeffs)
            value = volhat_sup(alpha).value
            bound = mob_level_upper(alpha, ones, minimal_s(alpha, ones))
            assert PP.of(value) <= bound
