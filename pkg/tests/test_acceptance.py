"""Acceptance suite: every hard property at the reference configuration.

Runs the full verification battery once (n=2, N=64, L=16, sphere order
256 / 4096 for indicators, seed 7) and asserts each criterion
separately, printing one PASS/FAIL line per criterion.

Known red: criterion 9's interpolation-mode half cannot reach its stated
tolerance at L = 16 — the rotation average on the torus carries an
irreducible periodization bias of about 4.5e-2 there (it is quadrature-
converged and independent of the interpolation order, and falls below
1e-3 only at L = 32).  The assertion is kept as stated rather than
loosened; see tests/test_multiplier.py for the box-size convergence
check of the same identity.
"""

import time

import pytest

from radialmult.verification import VerifyConfig, run_all

CRITERION_NAMES = [
    "1-idempotence",
    "2-fixed-point",
    "3-radiality",
    "4-odd-annihilation",
    "5-contractivity-exact",
    "6-contractivity-estimate",
    "7-positivity",
    "8-conjugation",
    "9-q-vs-p",
    "10-quadrature-convergence",
    "11-norm-sanity",
    "12-vector-contraction",
]


@pytest.fixture(scope="module")
def results():
    t0 = time.perf_counter()
    out = run_all(VerifyConfig())
    elapsed = time.perf_counter() - t0
    assert sorted(r.criterion for r in out) == sorted(CRITERION_NAMES)
    return {r.criterion: r for r in out}, elapsed


@pytest.mark.parametrize("criterion", CRITERION_NAMES)
def test_criterion(results, criterion):
    res = results[0][criterion]
    print(f"{'PASS' if res.passed else 'FAIL'} {res.criterion} {res.details}")
    assert res.passed, f"{res.criterion}: {res.details}"


def test_runtime_budget(results):
    # the reference configuration must verify in well under a minute
    assert results[1] < 60.0
