"""Release gate: every criterion must pass at its stated tolerance.

Criterion order matters: the cross-ordering criterion re-checks every
optimization instance collected by the equality and duality criteria,
so this module runs the suite once and asserts on the results.
"""

import pytest

from cyclevol import acceptance

RESULTS = {res.index: res for res in acceptance.run_all(verbose=False)}


@pytest.mark.parametrize("index", sorted(RESULTS))
def test_criterion(index):
    res = RESULTS[index]
    print(f"criterion {res.index:2d} [{'PASS' if res.passed else 'FAIL'}] {res.name}: {res.detail}")
    assert res.passed, f"criterion {res.index} ({res.name}): {res.detail}"


def test_every_criterion_ran():
    assert sorted(RESULTS) == list(range(1, 11))


def test_total_runtime_within_budget():
    assert sum(res.seconds for res in RESULTS.values()) < 120.0
