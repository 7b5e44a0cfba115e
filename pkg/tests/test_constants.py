from fractions import Fraction as F

import pytest

from cyclevol.constants import DegenerateRecursionError, epsilon, table, tau


def reference_epsilon(n, k):
    """Plain, unmemoized transcription used as an independent check."""
    if k == n - 1:
        return F(1)
    prev = reference_epsilon(n - 1, k)
    return (F(n - k - 1, n - k) * prev) / (F(n - 1, n - k - 1) - prev)


def reference_tau(n, k):
    if k == n - 1:
        return F(1)
    prev = reference_tau(n - 1, k)
    return min(
        F(n - k - 1, n - 1) * prev,
        (F(n - k - 1, n - k) * prev) / (F(n - 1, n - k - 1) - prev),
    )


def test_base_cases():
    for n in range(1, 21):
        assert epsilon(n, n - 1) == 1
        assert tau(n, n - 1) == 1


@pytest.mark.parametrize(
    "n,k,expected",
    [(3, 1, F(1, 2)), (4, 2, F(1, 4)), (2, 1, F(1)), (5, 3, F(1, 6)), (4, 1, F(1, 3))],
)
def test_epsilon_values(n, k, expected):
    assert epsilon(n, k) == expected


@pytest.mark.parametrize("n,k,expected", [(3, 1, F(1, 2)), (4, 2, F(1, 4)), (5, 1, F(1, 4))])
def test_tau_values(n, k, expected):
    assert tau(n, k) == expected


def test_memoized_agrees_with_direct_recursion():
    for n in range(1, 16):
        for k in range(1, n):
            assert epsilon(n, k) == reference_epsilon(n, k)
            assert tau(n, k) == reference_tau(n, k)


def test_sandwich_inequality_up_to_20():
    for n in range(1, 21):
        for k in range(1, n):
            e, t = epsilon(n, k), tau(n, k)
            assert 0 < t <= e <= F(1, n - k)
    assert epsilon(1, 0) == tau(1, 0) == 1


def test_upper_inequality_is_not_strict_on_the_k1_column():
    # the bound 1/(n-k) is attained for k = 1 even though n - k > 1
    for n in (3, 4, 5, 6):
        assert epsilon(n, 1) == F(1, n - 1)


def test_k0_column_degenerates():
    for n in (2, 3, 7):
        with pytest.raises(DegenerateRecursionError):
            epsilon(n, 0)
        with pytest.raises(DegenerateRecursionError):
            tau(n, 0)


def test_domain_validation():
    for bad in ((0, 0), (3, 3), (3, -1)):
        with pytest.raises(ValueError):
            epsilon(*bad)
        with pytest.raises(ValueError):
            tau(*bad)
    with pytest.raises(TypeError):
        epsilon(3.0, 1)


def test_table_skips_undefined_pairs():
    t = table(4)
    assert (2, 0) not in t
    assert t[(3, 1)] == (F(1, 2), F(1, 2))
    assert t[(1, 0)] == (F(1), F(1))
