"""Acceptance criteria, one test per criterion.

The same battery backs the CLI ``selftest`` subcommand; here each criterion
is a separate test so CI output shows one pass/fail line per criterion.

Criterion 10 (closed-form tree curvature matching transport on every
adjacent pair) is EXPECTED TO FAIL: on pairs whose smaller edge ends in a
leaf the formula overshoots the true curvature — the 4-path's leaf pairs
have formula value 1 but curvature 0.  The criterion is implemented exactly
as stated and reports the mismatch census instead of being weakened to pass.
"""

import pytest

from edge_ricci.acceptance import run_all


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all(seed=0)}


def test_gate_covers_all_eleven_criteria(results):
    assert sorted(results) == list(range(1, 12))
    for r in results.values():
        assert r.line().startswith(f"criterion {r.number:2d} [")


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(results, number):
    r = results[number]
    assert r.passed, r.line()
