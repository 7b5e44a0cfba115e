"""Exact intersection theory on products of projective spaces.

The ambient variety is X = P^{n_1} x ... x P^{n_r}.  Its numerical
groups have a monomial basis: writing H_i for the pullback of the
hyperplane class from the i-th factor, the classes of codimension c are
spanned by the monomials H_1^{a_1} ... H_r^{a_r} with sum(a_i) = c and
a_i <= n_i, and the intersection product is polynomial multiplication
in Q[H_1, ..., H_r] / (H_i^{n_i + 1}).

On this family the pseudo-effective cone and the nef cone agree with
the non-negative orthant in every degree (the pairing matrix between
complementary-degree bases is a permutation matrix), so every cone test
is an exact sign check on coefficients.  All arithmetic in this module
is exact rational; no floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct
from math import comb
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


def multinomial(total: int, parts: Sequence[int]) -> int:
    """Number of ways to split ``total`` into the ordered ``parts``."""
    if total != sum(parts):
        raise ValueError(f"parts {parts} do not sum to {total}")
    out = 1
    rem = total
    for p in parts:
        out *= comb(rem, p)
        rem -= p
    return out


@lru_cache(maxsize=None)
def _monomials(dims: tuple[int, ...], codim: int) -> tuple[Monomial, ...]:
    ranges = [range(min(n, codim) + 1) for n in dims]
    return tuple(a for a in _iproduct(*ranges) if sum(a) == codim)


@dataclass(frozen=True)
class VarietySpec:
    """A product of projective spaces, given by the factor dimensions."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1 or any(d < 1 for d in dims):
            raise ValueError(f"need at least one factor, all of dimension >= 1: {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return sum(self.dims)

    @property
    def r(self) -> int:
        return len(self.dims)

    def monomials(self, codim: int) -> tuple[Monomial, ...]:
        """Basis of the codimension-``codim`` classes, in lexicographic order."""
        if not 0 <= codim <= self.n:
            raise ValueError(f"codimension {codim} outside 0..{self.n}")
        return _monomials(self.dims, codim)

    @property
    def point_monomial(self) -> Monomial:
        return self.dims

    def hyperplane(self, i: int) -> "DivisorClass":
        coords = [Fraction(0)] * self.r
        coords[i] = Fraction(1)
        return DivisorClass(self, tuple(coords))

    def to_json(self) -> dict:
        return {"dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "VarietySpec":
        return cls(tuple(obj["dims"]))

    def __repr__(self) -> str:
        return " x ".join(f"P^{d}" for d in self.dims)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not accepted; pass Fraction or int")
    return Fraction(x)


@dataclass(frozen=True)
class CycleClass:
    """A numerical class of codimension ``codim``, as exact coefficients.

    ``coeffs`` is canonical: sorted by monomial, zero entries dropped.
    Equality is coefficient-wise.  Codimension 0 (multiples of the
    fundamental class) is representable, but operations whose statements
    assume dimension k < n reject it.
    """

    variety: VarietySpec
    codim: int
    coeffs: tuple[tuple[Monomial, Fraction], ...]

    def __post_init__(self):
        if not 0 <= self.codim <= self.variety.n:
            raise ValueError(f"codimension {self.codim} outside 0..{self.variety.n}")
        basis = set(self.variety.monomials(self.codim))
        norm = {}
        for mono, c in self.coeffs:
            mono = tuple(int(a) for a in mono)
            if mono not in basis:
                raise ValueError(f"monomial {mono} is not a codimension-{self.codim} basis class")
            c = _as_fraction(c)
            if c != 0:
                norm[mono] = norm.get(mono, Fraction(0)) + c
        object.__setattr__(
            self, "coeffs", tuple(sorted((m, c) for m, c in norm.items() if c != 0))
        )

    @classmethod
    def from_dict(cls, variety: VarietySpec, codim: int, coeffs: Mapping[Monomial, object]) -> "CycleClass":
        return cls(variety, codim, tuple((m, _as_fraction(c)) for m, c in coeffs.items()))

    @classmethod
    def zero_class(cls, variety: VarietySpec, codim: int) -> "CycleClass":
        return cls(variety, codim, ())

    @property
    def dim(self) -> int:
        return self.variety.n - self.codim

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.coeffs:
            if m == tuple(mono):
                return c
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.coeffs)

    def __add__(self, other: "CycleClass") -> "CycleClass":
        self._check_compatible(other)
        acc = {m: c for m, c in self.coeffs}
        for m, c in other.coeffs:
            acc[m] = acc.get(m, Fraction(0)) + c
        return CycleClass.from_dict(self.variety, self.codim, acc)

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "CycleClass":
        s = _as_fraction(scalar)
        return CycleClass(self.variety, self.codim, tuple((m, s * c) for m, c in self.coeffs))

    __mul__ = __rmul__

    def _check_compatible(self, other: "CycleClass"):
        if self.variety != other.variety:
            raise ValueError(f"variety mismatch: {self.variety} vs {other.variety}")
        if self.codim != other.codim:
            raise ValueError(f"codimension mismatch: {self.codim} vs {other.codim}")

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(),
            "codim": self.codim,
            "coeffs": [
                {"exponents": list(m), "numerator": c.numerator, "denominator": c.denominator}
                for m, c in self.coeffs
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "CycleClass":
        variety = VarietySpec.from_json(obj["variety"])
        coeffs = tuple(
            (tuple(entry["exponents"]), Fraction(entry["numerator"], entry["denominator"]))
            for entry in obj["coeffs"]
        )
        return cls(variety, int(obj["codim"]), coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"CycleClass(0; codim {self.codim} on {self.variety})"
        terms = " + ".join(f"{c}*H^{list(m)}" for m, c in self.coeffs)
        return f"CycleClass({terms} on {self.variety})"


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class sum(x_i * H_i) with exact rational coordinates."""

    variety: VarietySpec
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_as_fraction(x) for x in self.coords)
        if len(coords) != self.variety.r:
            raise ValueError(f"expected {self.variety.r} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, variety: VarietySpec, coords: Iterable) -> "DivisorClass":
        return cls(variety, tuple(_as_fraction(x) for x in coords))

    @property
    def is_nef(self) -> bool:
        return all(x >= 0 for x in self.coords)

    @property
    def is_big_nef(self) -> bool:
        return all(x > 0 for x in self.coords)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)

    @property
    def is_very_ample(self) -> bool:
        # integral with every coordinate >= 1 on this variety family
        return self.is_integral and all(x >= 1 for x in self.coords)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def as_cycle(self) -> CycleClass:
        coeffs = {}
        for i, x in enumerate(self.coords):
            mono = tuple(1 if j == i else 0 for j in range(self.variety.r))
            coeffs[mono] = x
        return CycleClass.from_dict(self.variety, 1, coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self.variety != other.variety:
            raise ValueError("variety mismatch")
        return DivisorClass(self.variety, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, scalar) -> "DivisorClass":
        s = _as_fraction(scalar)
        return DivisorClass(self.variety, tuple(s * x for x in self.coords))

    __mul__ = __rmul__

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(),
            "coords": [{"numerator": x.numerator, "denominator": x.denominator} for x in self.coords],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "DivisorClass":
        variety = VarietySpec.from_json(obj["variety"])
        coords = tuple(Fraction(e["numerator"], e["denominator"]) for e in obj["coords"])
        return cls(variety, coords)

    def __repr__(self) -> str:
        return f"DivisorClass({tuple(str(x) for x in self.coords)} on {self.variety})"


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------


def intersect(a: CycleClass, b: CycleClass) -> CycleClass:
    """Intersection product, i.e. truncated polynomial multiplication."""
    if a.variety != b.variety:
        raise ValueError(f"variety mismatch: {a.variety} vs {b.variety}")
    variety = a.variety
    codim = a.codim + b.codim
    if codim > variety.n:
        raise ValueError(f"total codimension {codim} exceeds dim X = {variety.n}")
    dims = variety.dims
    acc: dict[Monomial, Fraction] = {}
    for ma, ca in a.coeffs:
        for mb, cb in b.coeffs:
            m = tuple(x + y for x, y in zip(ma, mb))
            if any(m[i] > dims[i] for i in range(len(dims))):
                continue  # H_i^(n_i+1) = 0
            acc[m] = acc.get(m, Fraction(0)) + ca * cb
    return CycleClass.from_dict(variety, codim, acc)


def degree(a: CycleClass) -> Fraction:
    """Coefficient of the point class; defined for codimension n only."""
    if a.codim != a.variety.n:
        raise ValueError(f"degree needs codimension {a.variety.n}, got {a.codim}")
    return a.coefficient(a.variety.point_monomial)


def divisor_power(A: DivisorClass, j: int) -> CycleClass:
    """The class of A^j in the monomial basis; j = 0 gives the fundamental class."""
    if not 0 <= j <= A.variety.n:
        raise ValueError(f"power {j} outside 0..{A.variety.n}")
    coeffs: dict[Monomial, Fraction] = {}
    for mono in A.variety.monomials(j):
        c = Fraction(multinomial(j, mono))
        for x, e in zip(A.coords, mono):
            c *= x**e
        coeffs[mono] = c
    return CycleClass.from_dict(A.variety, j, coeffs)


def vol_divisor(A: DivisorClass) -> Fraction:
    """A^n for nef A: multinomial(n; n_1..n_r) * prod x_i^{n_i}."""
    if not A.is_nef:
        raise ValueError(f"volume is only computed for nef classes here, got {A}")
    out = Fraction(multinomial(A.variety.n, A.variety.dims))
    for x, e in zip(A.coords, A.variety.dims):
        out *= x**e
    return out


def is_pseudoeffective(a: CycleClass) -> bool:
    """Membership in the non-negative orthant of the monomial basis."""
    return all(c >= 0 for _, c in a.coeffs)


def is_nef_class(a: CycleClass) -> bool:
    """Nef cone test; on this family it coincides with pseudo-effectivity."""
    return is_pseudoeffective(a)


def is_big(a: CycleClass) -> bool:
    """Interior of the pseudo-effective cone: every basis coefficient > 0."""
    lookup = dict(a.coeffs)
    return all(lookup.get(m, Fraction(0)) > 0 for m in a.variety.monomials(a.codim))


def h0(L: DivisorClass) -> int:
    """dim of global sections of O(d_1,...,d_r): prod C(n_i + d_i, n_i)."""
    if not L.is_integral or any(x < 0 for x in L.coords):
        raise ValueError(f"h0 needs non-negative integer coordinates, got {L}")
    out = 1
    for n_i, d in zip(L.variety.dims, L.coords):
        out *= comb(n_i + int(d), n_i)
    return out


def pair_with_divisor_power(alpha: CycleClass, A: DivisorClass, k: int) -> Fraction:
    """The intersection number alpha . A^k for alpha of dimension k."""
    if alpha.codim + k != alpha.variety.n:
        raise ValueError(f"alpha . A^{k} is not a number for codim {alpha.codim}")
    return degree(intersect(alpha, divisor_power(A, k)))


def complete_intersection_class(B: DivisorClass, power: int) -> CycleClass:
    """[B^power] as a cycle class; convenience wrapper used throughout."""
    return divisor_power(B, power)


def dumps(obj) -> str:
    """Canonical JSON string for any of the serialisable types."""
    return json.dumps(obj.to_json(), sort_keys=True)
