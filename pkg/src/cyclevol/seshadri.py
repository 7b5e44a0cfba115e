"""Seshadri-constant intervals and weighted-mobility bounds.

The multi-point Seshadri constant of a very ample divisor at b general
points is only known between two-sided bounds on this level of
generality, so it is reported as an interval [1/t, (A^n / b)^{1/n}]
with t minimal such that b <= t^n A^n; the endpoints coincide exactly
when b = t^n A^n.  The weighted-mobility computations are the count
bounds with multiplicity weight folded in (a factor 2^n in every
hypothesis) together with the two-sided complete-intersection envelope
whose relative gap is 1 - ((t-1)/t)^(kn/(n-k)) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import BoundReport, _precise_report
from .cycles import (
    CycleClass,
    DivisorClass,
    is_pseudoeffective,
    pair_with_divisor_power,
    vol_divisor,
)
from .powerprod import PowerProduct, nth_root_floor


@dataclass(frozen=True)
class SeshadriEstimate:
    """Two-sided estimate for the b-point Seshadri constant of A."""

    b: int
    A: DivisorClass
    t: int  # minimal positive integer with b <= t^n A^n
    lo: Fraction  # 1/t
    hi: PowerProduct  # (A^n / b)^(1/n)

    @property
    def collapsed(self) -> bool:
        return PowerProduct.of(self.lo) == self.hi

    def hi_decimal(self, digits: int = 12) -> Fraction:
        return self.hi.upper(digits)

    def to_json(self, digits: int = 12) -> dict:
        return {
            "b": self.b,
            "t": self.t,
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi_decimal": f"{float(self.hi):.{digits}f}",
            "collapsed": self.collapsed,
        }


def seshadri_interval(b: int, A: DivisorClass) -> SeshadriEstimate:
    """[1/t, (A^n)^{1/n} / b^{1/n}] with t minimal such that b <= t^n A^n.

    Valid for general point configurations; the true constant for a
    special configuration may be smaller than 1/t.
    """
    if b < 1 or int(b) != b:
        raise ValueError(f"b must be a positive integer, got {b}")
    if not A.is_very_ample:
        raise ValueError(f"A must be very ample (integer coordinates >= 1), got {A}")
    n = A.variety.n
    voln = vol_divisor(A)
    # minimal t with t^n >= b / voln
    threshold = Fraction(b) / voln
    t = max(1, nth_root_floor(threshold.__ceil__(), n) - 1)
    while Fraction(t) ** n < threshold:
        t += 1
    hi = PowerProduct.power(voln, Fraction(1, n)) / PowerProduct.power(b, Fraction(1, n))
    return SeshadriEstimate(b, A, t, Fraction(1, t), hi)


# ---------------------------------------------------------------------------
# weighted count bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WmcEnvelope:
    """sup of the two growth branches bounding the weighted count."""

    value: PowerProduct  # exact max of the two branches
    branch: str  # "volume" or "pairing"
    volume_branch: Fraction
    pairing_branch: PowerProduct

    def decimal(self, digits: int = 6) -> Fraction:
        return self.value.upper(digits)


def wmc_upper(alpha: CycleClass, A: DivisorClass) -> WmcEnvelope:
    """sup{ A^n, (2 / (A^n)^{1/n})^{nk/(n-k)} (A^k . alpha)^{n/(n-k)} }."""
    if not A.is_very_ample:
        raise ValueError(f"A must be very ample, got {A}")
    if not is_pseudoeffective(alpha):
        raise ValueError("alpha must be pseudo-effective")
    n = alpha.variety.n
    if alpha.codim == 0:
        raise ValueError("codimension-0 classes are outside the 0 <= k < dim X convention")
    k = n - alpha.codim
    voln = vol_divisor(A)
    pairing = pair_with_divisor_power(alpha, A, k)
    first = PowerProduct.of(voln)
    if k == 0:
        second = PowerProduct.power(pairing, Fraction(n, n - k))
    else:
        second = PowerProduct.power(Fraction(2), Fraction(n * k, n - k)) / PowerProduct.power(
            voln, Fraction(k, n - k)
        )
        second = second * PowerProduct.power(pairing, Fraction(n, n - k))
    if second > first:
        return WmcEnvelope(second, "pairing", voln, second)
    return WmcEnvelope(first, "volume", voln, second)


def wmc_upper_precise(
    alpha: CycleClass, A: DivisorClass, s: int, variant: int = 1, t: int | None = None
) -> BoundReport:
    """The precise count bounds with the weighted 2^n-adjusted hypotheses.

    Same formula shapes as the unweighted bounds; every hypothesis
    carries the extra factor 2^n (2^n alpha . A^k < s A^n, and
    2^n alpha - [A]^(n-k) resp. 2^n alpha - t [A]^(n-k) not
    pseudo-effective).  Rational classes are accepted.
    """
    return _precise_report(alpha, A, s, variant, t, weighted=True)


# ---------------------------------------------------------------------------
# weighted mobility of distinguished classes
# ---------------------------------------------------------------------------


def wmob_ci_bounds(H: DivisorClass, k: int, t: int) -> tuple[PowerProduct, Fraction]:
    """Two-sided envelope for the weighted mobility of [H^(n-k)].

    With b = t^n vol(H) points and scale m = t^(n-k), the construction
    through b points with the proven Seshadri lower bound 1/t yields
    lower = ((t-1)/t)^(kn/(n-k)) vol(H), while vol(H) caps from above.
    The relative gap is exactly 1 - ((t-1)/t)^(kn/(n-k)) and tends to 0
    as t grows.
    """
    n = H.variety.n
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k = {k}")
    if t < 2 or int(t) != t:
        raise ValueError(f"t must be an integer >= 2, got {t}")
    if not H.is_very_ample:
        raise ValueError(f"H must be very ample, got {H}")
    upper = vol_divisor(H)
    ratio = PowerProduct.power(Fraction(t - 1, t), Fraction(k * n, n - k))
    return ratio * PowerProduct.of(upper), upper


def wmob_ci_relative_gap(H: DivisorClass, k: int, t: int) -> PowerProduct:
    """The exact ratio lower/upper = ((t-1)/t)^(kn/(n-k))."""
    n = H.variety.n
    if not 0 < k < n or t < 2:
        raise ValueError("need 0 < k < n and t >= 2")
    return PowerProduct.power(Fraction(t - 1, t), Fraction(k * n, n - k))


def wmob_divisor(L: DivisorClass, tol: Fraction = Fraction(0)) -> Fraction:
    """Weighted mobility of a big divisor class: its volume, exactly.

    On this variety family every big class is nef, so the approximation
    step that handles general big divisors is trivial (Y = X, A = L)
    and the value is the exact self-intersection number; ``tol`` (the
    approximation strictness) is accepted for interface uniformity and
    always met.
    """
    if not L.is_big_nef:
        raise ValueError(f"L must be big, got {L}")
    if Fraction(tol) < 0:
        raise ValueError("tolerance must be non-negative")
    return vol_divisor(L)
