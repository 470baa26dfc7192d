"""Rotations, Haar sampling, and quadrature rules on SO(n) and the sphere."""

import numpy as np
import pytest

from radialmult import (
    Rotation,
    c4_rotations,
    eval_symbol,
    haar_rotation,
    make_named_symbol,
    octahedral_rotations,
    rotated_symbol,
    so_quadrature,
    sphere_quadrature,
)
from radialmult.rotation import is_lattice_preserving, subgroup_quadrature


def _angle(R):
    return np.arctan2(R.M[1, 0], R.M[0, 0]) % (2.0 * np.pi)


def test_rotation_invariants_enforced():
    with pytest.raises(ValueError):
        Rotation(2, np.array([[1.0, 0.1], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        Rotation(2, np.array([[1.0, 0.0], [0.0, -1.0]]))  # det -1


def test_haar_so1_is_trivial():
    R = haar_rotation(1, np.random.default_rng(0))
    assert R.M.shape == (1, 1) and R.M[0, 0] == 1.0


def test_haar_determinism():
    a = haar_rotation(2, np.random.default_rng(42))
    b = haar_rotation(2, np.random.default_rng(42))
    assert np.array_equal(a.M, b.M)


@pytest.mark.parametrize("n", [2, 3])
def test_haar_samples_are_rotations(n):
    rng = np.random.default_rng(1)
    for _ in range(50):
        R = haar_rotation(n, rng)
        assert np.max(np.abs(R.M.T @ R.M - np.eye(n))) <= 1e-12
        assert abs(np.linalg.det(R.M) - 1.0) <= 1e-12


def test_haar_angle_uniformity_ks():
    # Kolmogorov-Smirnov against the uniform CDF on [0, 2pi), alpha = 0.01
    rng = np.random.default_rng(7)
    m = 10_000
    angles = np.sort([_angle(haar_rotation(2, rng)) for _ in range(m)]) / (2.0 * np.pi)
    k = np.arange(1, m + 1)
    d = max(np.max(k / m - angles), np.max(angles - (k - 1) / m))
    assert d * np.sqrt(m) <= 1.628  # critical value at significance 0.01


def test_so_quadrature_basic_rules():
    rq = so_quadrature(1, 5)
    assert len(rq.rotations) == 1 and rq.weights[0] == 1.0
    rq = so_quadrature(2, 4)
    got = sorted(_angle(R) for R in rq.rotations)
    assert np.allclose(got, [0.0, np.pi / 2, np.pi, 3 * np.pi / 2], atol=1e-14)
    assert np.allclose(rq.weights, 0.25)


def test_so2_trig_exactness():
    rq = so_quadrature(2, 8)
    for k in range(8):
        val = sum(w * np.exp(1j * k * _angle(R)) for R, w in zip(rq.rotations, rq.weights))
        assert abs(val - (1.0 if k == 0 else 0.0)) <= 1e-14


def test_so3_odd_function_vanishes():
    rq = so_quadrature(3, 4)
    e1 = np.array([1.0, 0.0, 0.0])
    val = sum(w * (R.M @ e1)[0] for R, w in zip(rq.rotations, rq.weights))
    assert abs(val) <= 1e-14


def test_so3_left_invariance():
    # quadrature of g(R0 R) vs g(R) for a fixed degree-<=4 polynomial in the entries
    rng = np.random.default_rng(3)
    R0 = haar_rotation(3, rng)
    C = rng.standard_normal((3, 3))

    def g(M):
        return float(np.sum(C * M) ** 2 + M[0, 0] * M[1, 1] * M[2, 2])

    rq = so_quadrature(3, 16)
    a = sum(w * g(R.M) for R, w in zip(rq.rotations, rq.weights))
    b = sum(w * g(R0.M @ R.M) for R, w in zip(rq.rotations, rq.weights))
    assert abs(a - b) <= 1e-6


@pytest.mark.parametrize("n,m", [(1, 2), (2, 7), (2, 16), (3, 3), (3, 8)])
def test_quadrature_invariants(n, m):
    sq = sphere_quadrature(n, m)
    assert np.max(np.abs(np.linalg.norm(sq.nodes, axis=-1) - 1.0)) <= 1e-12
    assert abs(np.sum(sq.weights) - 1.0) <= 1e-14
    assert np.all(sq.weights > 0)
    rq = so_quadrature(n, m)
    assert abs(np.sum(rq.weights) - 1.0) <= 1e-14
    assert np.all(rq.weights > 0)


def test_sphere_s1_nodes():
    sq = sphere_quadrature(2, 4)
    got = sorted(map(tuple, np.round(sq.nodes, 12)))
    assert got == [(-1.0, 0.0), (-0.0, -1.0), (0.0, 1.0), (1.0, 0.0)] or len(got) == 4
    assert np.allclose(sq.weights, 0.25)


def test_sphere_second_moments():
    # mean of u1^2 is 1/n by symmetry; exact for these product rules (m >= 3)
    for n, m in ((2, 16), (3, 3), (3, 8)):
        sq = sphere_quadrature(n, m)
        val = np.sum(sq.weights * sq.nodes[:, 0] ** 2)
        assert abs(val - 1.0 / n) <= 1e-14


def test_sphere_s0():
    sq = sphere_quadrature(1, 2)
    assert sorted(sq.nodes.ravel()) == [-1.0, 1.0]
    assert np.allclose(sq.weights, 0.5)


def test_c4_group():
    rots = c4_rotations()
    assert len(rots) == 4
    assert all(is_lattice_preserving(R) for R in rots)
    rq = subgroup_quadrature(rots)
    assert np.allclose(rq.weights, 0.25)


def test_octahedral_group():
    rots = octahedral_rotations()
    assert len(rots) == 24
    assert all(is_lattice_preserving(R) for R in rots)
    # closed under composition
    mats = {tuple(np.round(R.M).astype(int).ravel()) for R in rots}
    for A in rots[:6]:
        for B in rots[:6]:
            assert tuple(np.round(A.M @ B.M).astype(int).ravel()) in mats


def test_is_lattice_preserving():
    th = 0.3
    R = Rotation(2, np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]]))
    assert not is_lattice_preserving(R)
    assert is_lattice_preserving(Rotation(2, np.array([[0.0, -1.0], [1.0, 0.0]])))


def test_rotated_symbol_identity():
    phi = make_named_symbol("gaussian_aniso", {"A": np.diag([1.0, 4.0])}, 2)
    rot = rotated_symbol(phi, Rotation(2, np.eye(2)))
    rng = np.random.default_rng(2)
    for _ in range(10):
        xi = rng.standard_normal(2)
        assert eval_symbol(rot, xi) == eval_symbol(phi, xi)


def test_rotated_riesz_90deg():
    phi = make_named_symbol("riesz", {"j": 1}, 2)
    R = Rotation(2, np.array([[0.0, -1.0], [1.0, 0.0]]))
    rot = rotated_symbol(phi, R)
    xi = np.array([1.0, 0.0])
    # eval(rotated, xi) = phi(R xi) = phi((0, 1)) = 0; and at (0, -1): phi(R xi) = phi((1, 0)) = 1
    assert abs(eval_symbol(rot, xi) - eval_symbol(phi, R.M @ xi)) <= 1e-15
    assert abs(eval_symbol(rot, (0.0, -1.0)) - 1.0) <= 1e-15


def test_rotated_radial_symbol_unchanged():
    phi = make_named_symbol("heat", {"t": 1.0}, 2)
    rng = np.random.default_rng(5)
    R = haar_rotation(2, rng)
    rot = rotated_symbol(phi, R)
    for _ in range(10):
        xi = rng.standard_normal(2) * 3.0
        assert abs(eval_symbol(rot, xi) - eval_symbol(phi, xi)) <= 1e-12
