"""Upper and lower bounds for mobility counts of cycle classes.

Every bound here is an explicit closed formula in intersection numbers,
evaluated exactly.  Values like ``s**(3/2)`` are irrational, so bound
values are carried as :class:`~cyclevol.powerprod.PowerProduct` (exact)
and rendered to decimals with outward rounding: an upper bound is only
ever rounded up, which preserves strictness.

Hypothesis failures do not raise.  Each formula returns a
:class:`BoundReport` whose ``hypotheses`` record every precondition
check; the report is marked inapplicable when any check fails, which
lets parameter sweeps distinguish "bound does not apply" from "bad
input".  Genuinely malformed input (wrong codimension, c outside (0,1),
a non-pseudo-effective class where the formula requires one) raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .constants import DegenerateRecursionError, epsilon, tau
from .cycles import (
    CycleClass,
    DivisorClass,
    divisor_power,
    h0,
    is_big,
    is_pseudoeffective,
    pair_with_divisor_power,
    vol_divisor,
)
from .powerprod import PowerProduct


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound formula applied to one input."""

    formula_id: str
    formula: str
    value: Optional[PowerProduct]
    hypotheses: tuple[tuple[str, bool], ...]
    notes: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None and all(ok for _, ok in self.hypotheses)

    def decimal(self, digits: int = 6) -> Optional[Fraction]:
        """Outward-rounded (upper) decimal rendering of the bound value."""
        if self.value is None:
            return None
        return self.value.upper(digits)

    def to_json(self, digits: int = 6) -> dict:
        dec = self.decimal(digits)
        return {
            "formula_id": self.formula_id,
            "formula": self.formula,
            "applicable": self.applicable,
            "value_decimal": None if dec is None else f"{float(dec):.{digits}f}",
            "value_upper": None if dec is None else f"{dec.numerator}/{dec.denominator}",
            "hypotheses": [{"name": name, "holds": ok} for name, ok in self.hypotheses],
            "notes": self.notes,
        }


def _dim_k(alpha: CycleClass) -> int:
    """Dimension of alpha, rejecting codimension 0 (needs 0 <= k < n)."""
    if alpha.codim == 0:
        raise ValueError("codimension-0 classes are outside the 0 <= k < dim X convention")
    return alpha.variety.n - alpha.codim


def _exponent_constants(n: int, k: int) -> tuple[Optional[Fraction], Optional[Fraction], bool]:
    """(epsilon, tau, defined) guarding the degenerate k = 0 column."""
    try:
        return epsilon(n, k), tau(n, k), True
    except DegenerateRecursionError:
        return None, None, False


# ---------------------------------------------------------------------------
# generic count bound
# ---------------------------------------------------------------------------


def section_growth_constant(A: DivisorClass) -> Fraction:
    """Largest c with h0(mA) >= floor(c * m^n) for every m >= 1.

    For integer coordinates d_i >= 1 one has
    C(n_i + m d_i, n_i) > (m d_i)^{n_i} / n_i!, so h0(mA) > m^n A^n / n!
    and c = A^n / n! is valid; any larger c fails for large m because
    h0(mA) / m^n tends to A^n / n! from above.
    """
    if not A.is_very_ample:
        raise ValueError(f"need integer coordinates >= 1, got {A}")
    return vol_divisor(A) / factorial(A.variety.n)


def largest_valid_dyadic_c(A: DivisorClass, bits: int = 20) -> Fraction:
    """Largest dyadic with denominator 2**bits that is a valid c < 1."""
    cap = section_growth_constant(A)
    while (cap * 2**bits) < 1:
        bits += 8
    c = Fraction((cap * 2**bits).__floor__(), 2**bits)
    return min(c, Fraction(2**bits - 1, 2**bits))


def mc_upper_generic(alpha: CycleClass, A: DivisorClass, c: Fraction) -> BoundReport:
    """(n+1) 2^n (2(k+1)/c)^{n/(n-k)} (alpha . A^k)^{n/(n-k)} A^n."""
    c = Fraction(c)
    if not 0 < c < 1:
        raise ValueError(f"need 0 < c < 1, got c = {c}")
    if not is_pseudoeffective(alpha):
        raise ValueError("alpha must be pseudo-effective")
    n = alpha.variety.n
    k = _dim_k(alpha)
    pairing = pair_with_divisor_power(alpha, A, k)
    very_ample = A.is_very_ample
    voln = vol_divisor(A) if very_ample else Fraction(0)
    growth_ok = very_ample and c <= section_growth_constant(A)
    hyp = (
        ("A very ample (integer coordinates >= 1)", very_ample),
        ("alpha integral", alpha.is_integral),
        ("h0(mA) >= floor(c m^n) for all m (c <= A^n/n!)", growth_ok),
    )
    expo = Fraction(n, n - k)
    value = None
    if very_ample:
        base = Fraction(2 * (k + 1)) / c * pairing
        value = PowerProduct.of((n + 1) * 2**n * voln) * PowerProduct.power(base, expo)
    return BoundReport(
        formula_id="mc.generic",
        formula="(n+1) 2^n (2(k+1)/c)^(n/(n-k)) (alpha.A^k)^(n/(n-k)) A^n",
        value=value,
        hypotheses=hyp,
    )


# ---------------------------------------------------------------------------
# the sharp count bounds (three variants)
# ---------------------------------------------------------------------------

_PRECISE_FORMULAS = {
    1: "2^(kn+3n) s^(n/(n-k)) A^n",
    2: "2^(kn+3n) s^(n/(n-k) - eps(n,k)) A^n",
    3: "2^(kn+3n) s^(n/(n-k) - tau(n,k)) t^(tau(n,k)) A^n",
}


def _precise_report(
    alpha: CycleClass,
    A: DivisorClass,
    s: int,
    variant: int,
    t: Optional[int],
    *,
    weighted: bool,
) -> BoundReport:
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2 or 3, got {variant}")
    if s < 1 or int(s) != s:
        raise ValueError(f"s must be a positive integer, got {s}")
    n = alpha.variety.n
    k = _dim_k(alpha)
    mult = 2**n if weighted else 1  # weighted counts carry a 2^n in every hypothesis

    hyp: list[tuple[str, bool]] = [
        ("A very ample (integer coordinates >= 1)", A.is_very_ample),
    ]
    if not weighted:
        hyp.append(("alpha integral", alpha.is_integral))
    pairing = pair_with_divisor_power(alpha, A, k)
    voln = vol_divisor(A) if A.is_nef else None
    prefix = "2^n " if weighted else ""
    hyp.append(
        (f"{prefix}alpha . A^k < s A^n", voln is not None and mult * pairing < s * voln)
    )

    eps_nk, tau_nk, defined = _exponent_constants(n, k)
    expo = Fraction(n, n - k)
    value: Optional[PowerProduct] = None
    notes = ""

    if variant == 1:
        if voln is not None:
            value = (
                PowerProduct.power(2, k * n + 3 * n)
                * PowerProduct.power(s, expo)
                * PowerProduct.of(voln)
            )
    elif variant == 2:
        comparison = mult * alpha - divisor_power(A, n - k)
        hyp.append((f"{prefix}alpha - [A]^(n-k) not pseudo-effective", not is_pseudoeffective(comparison)))
        hyp.append(("epsilon(n,k) defined", defined))
        if defined and voln is not None:
            value = (
                PowerProduct.power(2, k * n + 3 * n)
                * PowerProduct.power(s, expo - eps_nk)
                * PowerProduct.of(voln)
            )
        elif not defined:
            notes = "epsilon recursion degenerates on the k = 0 column for n >= 2"
    else:
        if t is None:
            raise ValueError("variant 3 needs the auxiliary integer t")
        if t < 1 or int(t) != t:
            raise ValueError(f"t must be a positive integer, got {t}")
        hyp.append(("t <= s", t <= s))
        comparison = mult * alpha - t * divisor_power(A, n - k)
        hyp.append((f"{prefix}alpha - t [A]^(n-k) not pseudo-effective", not is_pseudoeffective(comparison)))
        hyp.append(("tau(n,k) defined", defined))
        if defined and voln is not None:
            value = (
                PowerProduct.power(2, k * n + 3 * n)
                * PowerProduct.power(s, expo - tau_nk)
                * PowerProduct.power(t, tau_nk)
                * PowerProduct.of(voln)
            )
        elif not defined:
            notes = "tau recursion degenerates on the k = 0 column for n >= 2"

    kind = "wmc" if weighted else "mc"
    return BoundReport(
        formula_id=f"{kind}.precise.{variant}",
        formula=_PRECISE_FORMULAS[variant],
        value=value,
        hypotheses=tuple(hyp),
        notes=notes,
    )


def mc_upper_precise(
    alpha: CycleClass, A: DivisorClass, s: int, variant: int = 1, t: Optional[int] = None
) -> BoundReport:
    """Count bound 2^(kn+3n) s^(n/(n-k)) A^n and its sharpened variants."""
    return _precise_report(alpha, A, s, variant, t, weighted=False)


def mc_upper_nonbig(alpha: CycleClass, A: DivisorClass, s: int) -> BoundReport:
    """2^(kn+3n) (k+1) s^(n/(n-k) - eps(n,k)) A^n for non-big classes."""
    if s < 1 or int(s) != s:
        raise ValueError(f"s must be a positive integer, got {s}")
    n = alpha.variety.n
    k = _dim_k(alpha)
    pairing = pair_with_divisor_power(alpha, A, k)
    voln = vol_divisor(A) if A.is_nef else None
    eps_nk, _, defined = _exponent_constants(n, k)
    hyp = (
        ("A very ample (integer coordinates >= 1)", A.is_very_ample),
        ("alpha integral", alpha.is_integral),
        ("alpha not big", not is_big(alpha)),
        ("alpha . A^k < s A^n", voln is not None and pairing < s * voln),
        ("epsilon(n,k) defined", defined),
    )
    value = None
    if defined and voln is not None:
        value = (
            PowerProduct.power(2, k * n + 3 * n)
            * PowerProduct.of(k + 1)
            * PowerProduct.power(s, Fraction(n, n - k) - eps_nk)
            * PowerProduct.of(voln)
        )
    return BoundReport(
        formula_id="mc.nonbig",
        formula="2^(kn+3n) (k+1) s^(n/(n-k) - eps(n,k)) A^n",
        value=value,
        hypotheses=hyp,
    )


def mob_level_upper(alpha: CycleClass, A: DivisorClass, s: int) -> PowerProduct:
    """n! 2^(kn+3n) s^(n/(n-k)) A^n, the count bound lifted to mobility scale."""
    n = alpha.variety.n
    report = mc_upper_precise(alpha, A, s, variant=1)
    if report.value is None:
        raise ValueError("bound undefined for this input")
    return PowerProduct.of(factorial(n)) * report.value


def minimal_s(alpha: CycleClass, A: DivisorClass) -> int:
    """Least positive integer s with alpha . A^k < s A^n."""
    k = _dim_k(alpha)
    pairing = pair_with_divisor_power(alpha, A, k)
    voln = vol_divisor(A)
    ratio = pairing / voln
    return max(1, ratio.__floor__() + 1)


# ---------------------------------------------------------------------------
# exact counts and constructions
# ---------------------------------------------------------------------------


def mc_divisor_exact(L: DivisorClass) -> int:
    """Exact count for a complete linear series: h0(L) - 1, floored at 0."""
    return max(h0(L) - 1, 0)


def mc_family_dim_bound(dim_w: int, n: int, k: int) -> int:
    """floor(dim W / (dim X - k)): a family can never do better than this."""
    if dim_w < 0 or not 0 <= k < n:
        raise ValueError(f"need dim_w >= 0 and 0 <= k < n, got ({dim_w}, {n}, {k})")
    return dim_w // (n - k)


def mob_ci_lower(H: DivisorClass, k: int, m: int) -> tuple[int, int]:
    """Point count of the complete-intersection family at scale m.

    Intersecting n-k members of the m-th multiple series through common
    general points gives a family of class m^(n-k) [H^(n-k)] through
    h0(mH) - 1 - (n-k) general points.  Returns (points, m^(n-k)).
    """
    n = H.variety.n
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k = {k}")
    if m < 1 or int(m) != m:
        raise ValueError(f"m must be a positive integer, got {m}")
    if not H.is_nef:
        raise ValueError("H must be nef")
    mH = m * H
    if not mH.is_integral:
        raise ValueError(f"{m} * H must have integer coordinates for the section count")
    points = h0(mH) - 1 - (n - k)
    return points, m ** (n - k)


def mob_ci_lower_estimate(H: DivisorClass, k: int, m: int) -> Fraction:
    """n! * points / m^n, the mobility-scale value of the family above."""
    points, _ = mob_ci_lower(H, k, m)
    n = H.variety.n
    return Fraction(factorial(n) * points, m**n)


def ci_points_p3(d: int) -> int:
    """Points on a pencil of degree-d surfaces in P^3: C(d+3,3) - 2.

    Two degree-d forms through that many general points still form a
    pencil, whose base curve has degree d^2; as d grows
    6 * ci_points_p3(d) / d^3 tends to 1, the classical lower bound
    construction for the mobility of the line class.
    """
    if d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")
    return comb(d + 3, 3) - 2


@dataclass(frozen=True)
class PerrinEstimate:
    """Leading term of the smooth-family count bound on P^3 curves."""

    leading_term: PowerProduct  # d^(3/2) / 2
    omitted: str = "lower-order O(d) term has no published constant and is not included"


def perrin_bound(d: int) -> PerrinEstimate:
    """Leading term d^(3/2)/2 of the count bound for degree-d curve families."""
    if d < 1:
        raise ValueError(f"d must be a positive integer, got {d}")
    return PerrinEstimate(PowerProduct.power(d, Fraction(3, 2)) / 2)


# ---------------------------------------------------------------------------
# constructive continuity modulus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuityNeighborhood:
    """A radius certifying small mobility near a given class.

    Every rational class beta with beta . A^k < s A^n and
    beta - delta s [A]^(n-k) not pseudo-effective has mobility < mu.
    """

    delta: Fraction
    s: int
    mu: Fraction


def continuity_neighborhood(alpha: CycleClass, A: DivisorClass, mu: Fraction) -> ContinuityNeighborhood:
    """Largest power of two delta with n! 2^(kn+3n+1) s^(n/(n-k)) A^n delta^tau < mu.

    s is chosen minimal with alpha . A^k < (s/2) A^n.  A literal largest
    dyadic below the threshold does not exist (dyadics are dense), so
    the returned delta is the largest 2^-j satisfying the strict
    inequality.
    """
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if not A.is_very_ample:
        raise ValueError(f"A must be very ample, got {A}")
    n = alpha.variety.n
    k = _dim_k(alpha)
    tau_nk = tau(n, k)  # raises DegenerateRecursionError on the k = 0 column, n >= 2
    pairing = pair_with_divisor_power(alpha, A, k)
    voln = vol_divisor(A)
    s = max(1, (2 * pairing / voln).__floor__() + 1)
    lead = (
        PowerProduct.of(factorial(n))
        * PowerProduct.power(2, k * n + 3 * n + 1)
        * PowerProduct.power(s, Fraction(n, n - k))
        * PowerProduct.of(voln)
    )

    def satisfied(j: int) -> bool:
        return lead * PowerProduct.power(Fraction(2) ** (-j), tau_nk) < mu

    # least integer j with delta = 2^-j small enough; satisfied is
    # monotone in j and j may be negative (delta above 1) for large mu
    if satisfied(0):
        hi, lo, step = 0, -1, 1
        while satisfied(lo):
            lo -= step
            step *= 2
    else:
        lo, hi, step = 0, 1, 1
        while not satisfied(hi):
            hi += step
            step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if satisfied(mid):
            hi = mid
        else:
            lo = mid
    return ContinuityNeighborhood(Fraction(2) ** (-hi), s, mu)
