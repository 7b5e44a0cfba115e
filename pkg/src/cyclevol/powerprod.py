"""Exact arithmetic for products of rational powers of rationals.

Values of the form ``q_1**e_1 * q_2**e_2 * ...`` with positive rational
bases and rational exponents (e.g. ``2**Fraction(3,2) * 6``) turn up in
every bound formula of this package.  They are usually irrational, but
equality and ordering between them are decidable without any numerics:
raising the ratio of two such values to the lcm of its exponent
denominators produces a plain rational, so any comparison reduces to a
comparison of two integers.  Bases are kept as integers (numerators and
denominators of the inputs), not prime factorizations; canonical bases
are unnecessary for exact comparison and factoring large numerators
would be far more expensive than the integer powers involved.

Decimal evaluation is done with directed rounding (``lower``/``upper``)
so that callers can round upper bounds up and lower bounds down without
losing the strictness of an inequality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import gmpy2

RationalLike = Union[int, Fraction]


def nth_root_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for non-negative integer n and k >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    root, _ = gmpy2.iroot(gmpy2.mpz(n), k)
    return int(root)


class PowerProduct:
    """A non-negative real number ``prod b**e_b`` with rational exponents.

    Immutable.  Bases are integers >= 2; zero is representable so the
    type is closed under the operations the bound formulas need:
    multiplication, division, rational powers, exact comparisons against
    other PowerProducts or rationals, and directed decimal rounding.
    Equality is mathematical (``4**Fraction(1,2) == 2``), so the type is
    deliberately unhashable.
    """

    __slots__ = ("_fac", "_zero")
    __hash__ = None  # equality is by value across representations

    def __init__(self, factors: dict[int, Fraction] | None = None, *, _zero: bool = False):
        if _zero:
            self._fac: dict[int, Fraction] = {}
            self._zero = True
            return
        fac: dict[int, Fraction] = {}
        for b, e in (factors or {}).items():
            b = int(b)
            e = Fraction(e)
            if b <= 0:
                raise ValueError(f"bases must be positive integers, got {b}")
            if b == 1 or e == 0:
                continue
            fac[b] = fac.get(b, Fraction(0)) + e
        self._fac = {b: e for b, e in fac.items() if e != 0}
        self._zero = False

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "PowerProduct":
        return cls(_zero=True)

    @classmethod
    def one(cls) -> "PowerProduct":
        return cls({})

    @classmethod
    def of(cls, q: RationalLike) -> "PowerProduct":
        """Exact embedding of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("PowerProduct represents non-negative reals only")
        if q == 0:
            return cls.zero()
        return cls({q.numerator: Fraction(1), q.denominator: Fraction(-1)})

    @classmethod
    def power(cls, base: RationalLike, exponent: RationalLike) -> "PowerProduct":
        """base ** exponent for rational base >= 0 and rational exponent."""
        base = Fraction(base)
        exponent = Fraction(exponent)
        if base < 0:
            raise ValueError("negative base")
        if base == 0:
            if exponent <= 0:
                raise ValueError("0 ** e undefined for e <= 0")
            return cls.zero()
        return cls({base.numerator: exponent, base.denominator: -exponent})

    # -- predicates and conversions ----------------------------------

    @property
    def is_zero(self) -> bool:
        return self._zero

    @property
    def is_rational(self) -> bool:
        return self._zero or all(e.denominator == 1 for e in self._fac.values())

    def as_fraction(self) -> Fraction:
        if self._zero:
            return Fraction(0)
        num, den, scale = self._integer_form()
        g = math.gcd(num, den)
        num, den = num // g, den // g
        root_n, exact_n = gmpy2.iroot(gmpy2.mpz(num), scale)
        root_d, exact_d = gmpy2.iroot(gmpy2.mpz(den), scale)
        if not (exact_n and exact_d):
            raise ValueError(f"{self!r} is irrational")
        return Fraction(int(root_n), int(root_d))

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other) -> "PowerProduct":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._zero or other._zero:
            return PowerProduct.zero()
        fac = dict(self._fac)
        for b, e in other._fac.items():
            fac[b] = fac.get(b, Fraction(0)) + e
        return PowerProduct(fac)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerProduct":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._zero:
            raise ZeroDivisionError("division by zero PowerProduct")
        if self._zero:
            return PowerProduct.zero()
        fac = dict(self._fac)
        for b, e in other._fac.items():
            fac[b] = fac.get(b, Fraction(0)) - e
        return PowerProduct(fac)

    def __rtruediv__(self, other) -> "PowerProduct":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: RationalLike) -> "PowerProduct":
        exponent = Fraction(exponent)
        if self._zero:
            if exponent <= 0:
                raise ValueError("0 ** e undefined for e <= 0")
            return PowerProduct.zero()
        return PowerProduct({b: e * exponent for b, e in self._fac.items()})

    # -- exact comparison ---------------------------------------------

    def _compare(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare PowerProduct with this type")
        if self._zero and other._zero:
            return 0
        if self._zero:
            return -1
        if other._zero:
            return 1
        diff: dict[int, Fraction] = dict(self._fac)
        for b, e in other._fac.items():
            diff[b] = diff.get(b, Fraction(0)) - e
        diff = {b: e for b, e in diff.items() if e != 0}
        if not diff:
            return 0
        scale = math.lcm(*(e.denominator for e in diff.values()))
        num = 1
        den = 1
        for b, e in diff.items():
            t = int(e * scale)
            if t > 0:
                num *= b**t
            else:
                den *= b ** (-t)
        return (num > den) - (num < den)

    def __eq__(self, other) -> bool:
        try:
            return self._compare(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self._compare(other) < 0

    def __le__(self, other) -> bool:
        return self._compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self._compare(other) > 0

    def __ge__(self, other) -> bool:
        return self._compare(other) >= 0

    # -- directed decimal evaluation ----------------------------------

    def _integer_form(self) -> tuple[int, int, int]:
        """(N, D, L) with value == (N/D) ** (1/L)."""
        if self._zero:
            raise ValueError("zero has no integer form")
        if not self._fac:
            return 1, 1, 1
        scale = math.lcm(*(e.denominator for e in self._fac.values()))
        num = 1
        den = 1
        for b, e in self._fac.items():
            t = int(e * scale)
            if t > 0:
                num *= b**t
            else:
                den *= b ** (-t)
        return num, den, scale

    def _floor_scaled(self, digits: int) -> tuple[int, bool]:
        """(m, exact) with m = floor(value * 10**digits)."""
        num, den, scale = self._integer_form()
        target = num * 10 ** (scale * digits)
        m = nth_root_floor(target // den, scale)
        while (m + 1) ** scale * den <= target:
            m += 1
        while m > 0 and m**scale * den > target:
            m -= 1
        return m, m**scale * den == target

    def lower(self, digits: int = 12) -> Fraction:
        """Largest multiple of 10**-digits that is <= the exact value."""
        if self._zero:
            return Fraction(0)
        m, _ = self._floor_scaled(digits)
        return Fraction(m, 10**digits)

    def upper(self, digits: int = 12) -> Fraction:
        """Smallest multiple of 10**-digits that is >= the exact value."""
        if self._zero:
            return Fraction(0)
        m, exact = self._floor_scaled(digits)
        return Fraction(m if exact else m + 1, 10**digits)

    def __float__(self) -> float:
        if self._zero:
            return 0.0
        log = math.fsum(float(e) * math.log(b) for b, e in self._fac.items())
        try:
            return math.exp(log)
        except OverflowError:
            return math.inf

    def __repr__(self) -> str:
        if self._zero:
            return "PowerProduct(0)"
        if not self._fac:
            return "PowerProduct(1)"
        parts = []
        for b in sorted(self._fac):
            e = self._fac[b]
            parts.append(f"{b}^({e})" if e.denominator != 1 else f"{b}^{e}")
        return "PowerProduct(" + " * ".join(parts) + ")"


def _coerce(value) -> PowerProduct:
    if isinstance(value, PowerProduct):
        return value
    if isinstance(value, (int, Fraction)):
        if value < 0:
            raise ValueError("PowerProduct arithmetic is restricted to non-negative rationals")
        return PowerProduct.of(value)
    return NotImplemented
