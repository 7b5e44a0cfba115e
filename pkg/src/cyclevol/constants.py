"""The recursive exponent-improvement constants for the mobility bounds.

Two families of exact rationals indexed by (n, k) with 0 <= k < n:

    epsilon(n, n-1) = 1
    epsilon(n, k)   = ((n-k-1)/(n-k) * epsilon(n-1, k))
                      / ((n-1)/(n-k-1) - epsilon(n-1, k))

    tau(n, n-1) = 1
    tau(n, k)   = min( (n-k-1)/(n-1) * tau(n-1, k),
                       ((n-k-1)/(n-k) * tau(n-1, k))
                       / ((n-1)/(n-k-1) - tau(n-1, k)) )

Both recursions are implemented verbatim, with no simplification.  Two
quirks of the printed formulas are surfaced rather than patched:

* The inequality epsilon(n, k) <= 1/(n-k) is NOT strict on the k = 1
  column: direct evaluation gives epsilon(n, 1) = 1/(n-1) for
  n = 3, 4, 5, ... (equality, even though n-k > 1).

* The k = 0 column degenerates for n >= 2: epsilon(1, 0) = 1 is a base
  case, and the recursion for epsilon(2, 0) then divides by zero
  ((n-1)/(n-k-1) - epsilon(1, 0) = 1 - 1).  The same denominator
  appears inside tau's second branch.  Every (n >= 2, k = 0) value is
  therefore undefined and requesting one raises
  :class:`DegenerateRecursionError`.  The bounds that consume these
  constants report themselves inapplicable in that regime instead of
  inventing a value.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class DegenerateRecursionError(ValueError):
    """A recursion denominator vanished; the constant is undefined."""


def _validate(n: int, k: int):
    if not (isinstance(n, int) and isinstance(k, int)):
        raise TypeError(f"n and k must be integers, got {n!r}, {k!r}")
    if n < 1 or k < 0 or k >= n:
        raise ValueError(f"need 1 <= n and 0 <= k < n, got (n, k) = ({n}, {k})")


@lru_cache(maxsize=None)
def _epsilon(n: int, k: int) -> Fraction:
    if k == n - 1:
        return Fraction(1)
    prev = _epsilon(n - 1, k)
    den = Fraction(n - 1, n - k - 1) - prev
    if den <= 0:
        raise DegenerateRecursionError(
            f"epsilon({n}, {k}): denominator (n-1)/(n-k-1) - epsilon({n - 1}, {k}) = {den}; "
            "the recursion is undefined on the k = 0 column for n >= 2"
        )
    return (Fraction(n - k - 1, n - k) * prev) / den


@lru_cache(maxsize=None)
def _tau(n: int, k: int) -> Fraction:
    if k == n - 1:
        return Fraction(1)
    prev = _tau(n - 1, k)
    first = Fraction(n - k - 1, n - 1) * prev
    den = Fraction(n - 1, n - k - 1) - prev
    if den <= 0:
        raise DegenerateRecursionError(
            f"tau({n}, {k}): denominator (n-1)/(n-k-1) - tau({n - 1}, {k}) = {den}; "
            "the recursion is undefined on the k = 0 column for n >= 2"
        )
    second = (Fraction(n - k - 1, n - k) * prev) / den
    return min(first, second)


def epsilon(n: int, k: int) -> Fraction:
    """Exact epsilon(n, k); memoized."""
    _validate(n, k)
    return _epsilon(n, k)


def tau(n: int, k: int) -> Fraction:
    """Exact tau(n, k); memoized."""
    _validate(n, k)
    return _tau(n, k)


def table(n_max: int) -> dict[tuple[int, int], tuple[Fraction, Fraction]]:
    """All defined (epsilon, tau) pairs with n <= n_max."""
    out = {}
    for n in range(1, n_max + 1):
        for k in range(n):
            try:
                out[(n, k)] = (epsilon(n, k), tau(n, k))
            except DegenerateRecursionError:
                continue
    return out
