"""Operator-norm estimation and contraction reports."""

import numpy as np
import pytest

from radialmult import (
    MultiplierOperator,
    contraction_report,
    make_grid,
    make_named_symbol,
    norm_lower_power,
    norm_p2_exact,
    norm_upper_kernel,
)


def test_p2_exact_anchors():
    g = make_grid(2, 32, 8.0)
    cases = [
        ("heat", {"t": 1.0}, 1.0),
        ("riesz", {"j": 1}, 1.0),
        ("gaussian_aniso", {"A": np.diag([1.0, 4.0])}, 1.0),
    ]
    for name, params, want in cases:
        op = MultiplierOperator(make_named_symbol(name, params, 2), g)
        est = norm_p2_exact(op)
        assert est.kind == "exact" and est.p == 2.0
        assert est.value == pytest.approx(want, abs=1e-14)


def test_power_method_p2_anchor():
    g = make_grid(2, 32, 8.0)
    op = MultiplierOperator(make_named_symbol("heat", {"t": 1.0}, 2), g)
    est = norm_lower_power(op, 2.0, trials=4, iters=2000, seed=0)
    assert est.kind == "lower-bound"
    assert 1.0 - 1e-6 <= est.value <= 1.0 + 1e-12


def test_power_method_constant_symbol():
    g = make_grid(2, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("constant", {"c": -2.0 + 1.0j}, 2), g)
    for p in (1.5, 2.0, 3.0):
        est = norm_lower_power(op, p, trials=2, iters=50, seed=1)
        assert est.value == pytest.approx(np.sqrt(5.0), abs=1e-9)


def test_power_method_modulation_isometry():
    g = make_grid(2, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("modulation", {"a": (0.5, 0.0)}, 2), g)
    est = norm_lower_power(op, 3.0, trials=4, iters=500, seed=2)
    assert 1.0 - 1e-6 <= est.value <= 1.0 + 1e-9


def test_power_method_rejects_endpoints():
    g = make_grid(1, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("heat", {"t": 1.0}, 1), g)
    for p in (1.0, np.inf):
        with pytest.raises(ValueError):
            norm_lower_power(op, p)


def test_power_method_history_monotone():
    g = make_grid(2, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("gaussian_aniso", {"A": np.diag([1.0, 4.0])}, 2), g)
    est = norm_lower_power(op, 4.0, trials=1, iters=100, seed=3)
    h = np.asarray(est.history)
    assert np.all(np.diff(h) >= -1e-12)


def test_upper_kernel_heat_is_one():
    g = make_grid(1, 128, 32.0)
    op = MultiplierOperator(make_named_symbol("heat", {"t": 1.0}, 1), g)
    est = norm_upper_kernel(op)
    assert est.kind == "upper-bound"
    assert est.value == pytest.approx(1.0, abs=1e-8)


def test_upper_kernel_constant():
    g = make_grid(1, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("constant", {"c": 3.0}, 1), g)
    assert norm_upper_kernel(op).value == pytest.approx(3.0, abs=1e-12)


def test_upper_kernel_ball_indicator_exceeds_one():
    # sinc-type kernel: |K| mass grows with the box, well above phi(0) = 1
    g = make_grid(1, 256, 32.0)
    op = MultiplierOperator(make_named_symbol("ball_indicator", {"rho": 1.0}, 1), g)
    assert norm_upper_kernel(op).value > 1.2


def test_upper_kernel_endpoint_kinds():
    g = make_grid(1, 16, 8.0)
    op = MultiplierOperator(make_named_symbol("heat", {"t": 1.0}, 1), g)
    assert norm_upper_kernel(op, p=1.0).kind == "exact"
    assert norm_upper_kernel(op, p=np.inf).kind == "exact"
    assert norm_upper_kernel(op, p=3.0).kind == "upper-bound"


def test_ordering_lower_le_upper():
    g = make_grid(2, 16, 8.0)
    for name, params in [("heat", {"t": 1.0}), ("riesz", {"j": 1}), ("poisson", {"t": 1.0})]:
        op = MultiplierOperator(make_named_symbol(name, params, 2), g)
        upper = norm_upper_kernel(op).value
        for p in (1.5, 2.0, 4.0):
            lower = norm_lower_power(op, p, trials=2, iters=50, seed=4).value
            assert lower <= upper + 1e-9
        est2 = norm_lower_power(op, 2.0, trials=2, iters=50, seed=4).value
        assert est2 <= norm_p2_exact(op).value + 1e-12


def test_contraction_report_heat_fixed_point():
    g = make_grid(2, 32, 8.0)
    rep = contraction_report(
        make_named_symbol("heat", {"t": 1.0}, 2), g, (1.5, 2.0, 4.0), 256, trials=2, iters=50
    )
    assert all(rep.flags.values())


def test_contraction_report_riesz():
    g = make_grid(2, 32, 8.0)
    rep = contraction_report(
        make_named_symbol("riesz", {"j": 1}, 2), g, (2.0,), 64, trials=2, iters=50
    )
    assert rep.flags["p2_sup_contraction"]
    assert rep.flags["lower_le_upper"]
    # Pphi = 0, so every radialized lower bound is ~0
    rad = [r for r in rep.rows if r["target"] == "radialized" and r["method"] == "power"]
    assert all(r["value"] <= 1e-12 for r in rad)


def test_contraction_report_rows_schema():
    g = make_grid(2, 16, 8.0)
    rep = contraction_report(
        make_named_symbol("gaussian_aniso", {"A": np.diag([1.0, 4.0])}, 2),
        g,
        (4.0,),
        64,
        trials=2,
        iters=50,
    )
    for row in rep.rows:
        assert row["target"] in ("original", "radialized")
        assert set(row) >= {"target", "p", "method", "kind", "value"}
