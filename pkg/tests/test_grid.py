"""Grid construction, transforms, and L^p norms."""

import numpy as np
import pytest

from radialmult import (
    GridFunction,
    VectorGridFunction,
    lp_norm,
    make_grid,
    transform,
)


def test_make_grid_basic():
    g = make_grid(2, 64, 16.0)
    assert g.dx == 0.25
    assert g.dxi == 2.0 * np.pi / 16.0
    assert g.xi_max == np.pi * 64 / 16.0
    assert g.shape == (64, 64)


def test_make_grid_validation():
    with pytest.raises(ValueError):
        make_grid(4, 16, 8.0)
    with pytest.raises(ValueError):
        make_grid(2, 15, 8.0)  # odd N
    with pytest.raises(ValueError):
        make_grid(2, 2, 8.0)  # too small
    with pytest.raises(ValueError):
        make_grid(2, 16, -1.0)


def test_index_axis_signed_order():
    g = make_grid(1, 8, 8.0)
    assert list(g.index_axis()) == [0, 1, 2, 3, -4, -3, -2, -1]


def test_axes_hit_origin_first():
    g = make_grid(2, 8, 8.0)
    assert g.space_axis()[0] == 0.0
    assert g.frequency_axis()[0] == 0.0
    X = g.space_mesh()
    XI = g.frequency_mesh()
    # storage axis 0 carries coordinate 0
    assert X[1, 0, 0] == g.dx and X[1, 0, 1] == 0.0
    assert XI[0, 1, 1] == g.dxi and XI[0, 1, 0] == 0.0


@pytest.mark.parametrize("n,N", [(1, 8), (2, 16), (3, 8)])
def test_transform_round_trip(n, N):
    g = make_grid(n, N, 8.0)
    rng = np.random.default_rng(3)
    f = GridFunction(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    back = transform(transform(f, "forward"), "inverse")
    assert np.max(np.abs(back.values - f.values)) <= 1e-12


def test_transform_delta_is_flat():
    # F(delta at 0) = dx^n on every mode under the physical scaling
    g = make_grid(1, 16, 8.0)
    v = np.zeros(16, dtype=complex)
    v[0] = 1.0
    fhat = transform(GridFunction(g, v), "forward")
    assert np.max(np.abs(fhat.values - g.dx)) <= 1e-14


def test_transform_gaussian_oracle():
    # f = e^{-x^2/4} on a box large enough that periodization is negligible;
    # continuum transform is 2 sqrt(pi) e^{-xi^2}.
    g = make_grid(1, 256, 64.0)
    x = g.space_axis()
    f = GridFunction(g, np.exp(-x**2 / 4.0) + 0j)
    fhat = transform(f, "forward")
    xi = g.frequency_axis()
    oracle = 2.0 * np.sqrt(np.pi) * np.exp(-(xi**2))
    assert np.max(np.abs(fhat.values - oracle)) <= 1e-10


def test_lp_norm_example():
    # all-ones with dx = 1: norm is (N * 1 * dx)^{1/2}
    g = make_grid(1, 4, 4.0)
    f = GridFunction(g, np.ones(4, dtype=complex))
    assert lp_norm(f, 2.0) == pytest.approx(2.0, abs=1e-15)
    assert lp_norm(GridFunction(g, np.zeros(4, dtype=complex)), 1.0) == 0.0
    assert lp_norm(GridFunction(g, np.zeros(4, dtype=complex)), np.inf) == 0.0


def test_lp_norm_infinity_and_volume():
    g = make_grid(2, 8, 4.0)
    v = np.zeros(g.shape, dtype=complex)
    v[2, 3] = -3.0
    f = GridFunction(g, v)
    assert lp_norm(f, np.inf) == 3.0
    assert lp_norm(f, 1.0) == pytest.approx(3.0 * g.dx**2, abs=1e-15)


def test_parseval_consistency():
    g = make_grid(2, 16, 8.0)
    rng = np.random.default_rng(11)
    f = GridFunction(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    fhat = transform(f, "forward")
    freq_side = np.sqrt(np.sum(np.abs(fhat.values) ** 2) / g.L**g.n)
    assert abs(lp_norm(f, 2.0) - freq_side) <= 1e-12


def test_lp_norm_triangle_and_homogeneity():
    g = make_grid(2, 8, 4.0)
    rng = np.random.default_rng(5)
    a = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    b = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    for p in (1.0, 2.0, 3.5, np.inf):
        na = lp_norm(GridFunction(g, a), p)
        nb = lp_norm(GridFunction(g, b), p)
        nab = lp_norm(GridFunction(g, a + b), p)
        assert nab <= na + nb + 1e-12
        c = -2.5 + 1.5j
        assert lp_norm(GridFunction(g, c * a), p) == pytest.approx(abs(c) * na, rel=1e-12)


def test_vector_norm_d1_matches_scalar():
    g = make_grid(2, 8, 4.0)
    rng = np.random.default_rng(9)
    vals = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    f = GridFunction(g, vals)
    for q in (1.0, 2.0, np.inf):
        F = VectorGridFunction(g, 1, q, vals[..., None])
        for p in (1.0, 2.0, 4.0, np.inf):
            assert lp_norm(F, p) == pytest.approx(lp_norm(f, p), rel=1e-14)


def test_vector_norm_fiber_order():
    # |(3, 4)| in ell_q: q=1 -> 7, q=2 -> 5, q=inf -> 4; single point grid check
    g = make_grid(1, 4, 4.0)
    vals = np.zeros((4, 2), dtype=complex)
    vals[0] = (3.0, 4.0)
    expected = {1.0: 7.0, 2.0: 5.0, np.inf: 4.0}
    for q, e in expected.items():
        F = VectorGridFunction(g, 2, q, vals)
        assert lp_norm(F, np.inf) == pytest.approx(e, abs=1e-15)
