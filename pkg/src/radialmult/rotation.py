"""Rotations, Haar sampling, and quadrature on SO(n) and the sphere.

Haar sampling orthogonalizes a Gaussian matrix and fixes the sign
ambiguity of the QR factorization (positive diagonal of R) before
flipping one column when the determinant is -1; without the sign fix
the sample is not uniformly distributed.

Deterministic rules: on SO(2) the uniform angle rule with m nodes
integrates trigonometric polynomials of degree < m exactly.  On SO(3)
the Euler-angle factorization of Haar measure gives a product rule,
uniform in the two azimuthal angles and Gauss-Legendre in cos(beta).
Sphere rules are the analogous product rules one dimension down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import FrequencyGrid
from .symbols import RadialSymbol, SampledSymbol, Symbol

__all__ = [
    "Rotation",
    "RotationQuadrature",
    "SphereQuadrature",
    "haar_rotation",
    "so_quadrature",
    "sphere_quadrature",
    "subgroup_quadrature",
    "rotated_symbol",
    "is_lattice_preserving",
    "c4_rotations",
    "octahedral_rotations",
]

ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Rotation:
    """Element of SO(n): orthogonal matrix with determinant +1."""

    n: int
    M: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.M, dtype=float)
        if M.shape != (self.n, self.n):
            raise ValueError(f"matrix must be {self.n}x{self.n}, got {M.shape}")
        if np.max(np.abs(M.T @ M - np.eye(self.n))) > ORTHO_TOL:
            raise ValueError("matrix is not orthogonal within tolerance")
        if abs(np.linalg.det(M) - 1.0) > ORTHO_TOL:
            raise ValueError("matrix must have determinant +1")
        object.__setattr__(self, "M", M)

    def inverse(self) -> "Rotation":
        return Rotation(self.n, self.M.T)

    def __matmul__(self, other: "Rotation") -> "Rotation":
        return Rotation(self.n, self.M @ other.M)


@dataclass(frozen=True)
class RotationQuadrature:
    """Weighted rotation nodes approximating normalized Haar measure on SO(n)."""

    rotations: tuple
    weights: np.ndarray
    kind: str  # deterministic | monte-carlo | subgroup
    order: int

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (len(self.rotations),):
            raise ValueError("weights must match rotation count")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-14:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "rotations", tuple(self.rotations))


@dataclass(frozen=True)
class SphereQuadrature:
    """Weighted unit vectors approximating the uniform measure on S^(n-1)."""

    n: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != self.n:
            raise ValueError(f"nodes must have shape (m, {self.n})")
        if np.max(np.abs(np.linalg.norm(nodes, axis=1) - 1.0)) > 1e-12:
            raise ValueError("nodes must be unit vectors")
        if np.any(weights <= 0) or abs(weights.sum() - 1.0) > 1e-14:
            raise ValueError("weights must be positive and sum to 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


def haar_rotation(n: int, rng: np.random.Generator) -> Rotation:
    """Draw a Haar-uniform rotation from a seeded generator."""
    if n not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    if n == 1:
        return Rotation(1, np.eye(1))
    G = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    # sign fix: make the triangular factor's diagonal positive
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Rotation(n, Q)


def _rotation_2d(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _euler_zyz(alpha: float, beta: float, gamma: float) -> np.ndarray:
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    cg, sg = np.cos(gamma), np.sin(gamma)
    Rz_a = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
    Ry_b = np.array([[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]])
    Rz_g = np.array([[cg, -sg, 0.0], [sg, cg, 0.0], [0.0, 0.0, 1.0]])
    return Rz_a @ Ry_b @ Rz_g


def so_quadrature(n: int, m: int) -> RotationQuadrature:
    """Deterministic quadrature rule for normalized Haar measure on SO(n)."""
    if n not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    if m < 1:
        raise ValueError(f"order must be >= 1, got {m}")
    if n == 1:
        return RotationQuadrature((Rotation(1, np.eye(1)),), np.array([1.0]), "deterministic", m)
    if n == 2:
        angles = 2.0 * np.pi * np.arange(m) / m
        rots = tuple(Rotation(2, _rotation_2d(t)) for t in angles)
        return RotationQuadrature(rots, np.full(m, 1.0 / m), "deterministic", m)
    # n == 3: Haar measure factors as dalpha/2pi * d(cos beta)/2 * dgamma/2pi
    nodes_cb, weights_cb = np.polynomial.legendre.leggauss(m)
    angles = 2.0 * np.pi * np.arange(m) / m
    rots = []
    weights = []
    for alpha in angles:
        for cb, wb in zip(nodes_cb, weights_cb):
            beta = np.arccos(cb)
            for gamma in angles:
                rots.append(Rotation(3, _euler_zyz(alpha, beta, gamma)))
                weights.append(wb / 2.0 / m**2)
    weights = np.asarray(weights)
    weights = weights / weights.sum()
    return RotationQuadrature(tuple(rots), weights, "deterministic", m)


def sphere_quadrature(n: int, m: int) -> SphereQuadrature:
    """Quadrature for the uniform probability measure on S^(n-1)."""
    if n not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    if m < 2:
        raise ValueError(f"order must be >= 2, got {m}")
    if n == 1:
        return SphereQuadrature(1, np.array([[1.0], [-1.0]]), np.array([0.5, 0.5]))
    if n == 2:
        angles = 2.0 * np.pi * np.arange(m) / m
        nodes = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        return SphereQuadrature(2, nodes, np.full(m, 1.0 / m))
    # n == 3: Gauss-Legendre in cos(theta) times uniform azimuth
    ct, wt = np.polynomial.legendre.leggauss(m)
    phis = 2.0 * np.pi * np.arange(m) / m
    st = np.sqrt(1.0 - ct**2)
    nodes = np.empty((m * m, 3))
    weights = np.empty(m * m)
    k = 0
    for i in range(m):
        for j in range(m):
            nodes[k] = (st[i] * np.cos(phis[j]), st[i] * np.sin(phis[j]), ct[i])
            weights[k] = wt[i] / 2.0 / m
            k += 1
    weights = weights / weights.sum()
    return SphereQuadrature(3, nodes, weights)


def subgroup_quadrature(rotations: list[Rotation]) -> RotationQuadrature:
    """Uniform weights over a finite set of rotations (exact for subgroup averages)."""
    k = len(rotations)
    return RotationQuadrature(tuple(rotations), np.full(k, 1.0 / k), "subgroup", k)


def is_lattice_preserving(R: Rotation) -> bool:
    """True when R is a signed permutation matrix, so it maps the lattice to itself."""
    M = R.M
    rounded = np.round(M)
    if np.max(np.abs(M - rounded)) > ORTHO_TOL:
        return False
    return bool(np.all(np.sum(np.abs(rounded), axis=0) == 1))


def c4_rotations() -> list[Rotation]:
    """The four lattice-preserving rotations of the plane (multiples of 90 degrees)."""
    return [Rotation(2, np.round(_rotation_2d(k * np.pi / 2.0))) for k in range(4)]


def octahedral_rotations() -> list[Rotation]:
    """The 24 rotations of the cube: signed 3x3 permutation matrices with det +1."""
    from itertools import permutations, product

    out = []
    for perm in permutations(range(3)):
        for signs in product((1.0, -1.0), repeat=3):
            M = np.zeros((3, 3))
            for row, (col, s) in enumerate(zip(perm, signs)):
                M[row, col] = s
            if np.linalg.det(M) > 0:
                out.append(Rotation(3, M))
    assert len(out) == 24
    return out


@dataclass(frozen=True)
class RotatedSymbol(Symbol):
    """Lazy composition xi -> base(R xi)."""

    base: Symbol
    R: Rotation

    @property
    def n(self) -> int:
        return self.base.n

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return self.base.evaluate(points @ self.R.M.T)


def rotated_symbol(phi: Symbol, R: Rotation) -> Symbol:
    """The symbol xi -> phi(R xi).

    Radial symbols are returned unchanged (exact invariance).  Sampled
    symbols require a lattice-preserving R and are re-indexed with the
    torus frequency wrap, so the result is again a lattice sample.
    """
    if isinstance(phi, RadialSymbol):
        return phi
    if isinstance(phi, SampledSymbol):
        if not is_lattice_preserving(R):
            raise ValueError("sampled symbols only support lattice-preserving rotations")
        return SampledSymbol(phi.grid, _permute_lattice(phi.values, phi.grid, R))
    return RotatedSymbol(base=phi, R=R)


def _permute_lattice(values: np.ndarray, grid: FrequencyGrid, R: Rotation) -> np.ndarray:
    """Re-index lattice values under a signed permutation, wrapping mod N."""
    M = np.round(R.M).astype(int)
    idx = np.meshgrid(*([grid.index_axis()] * grid.n), indexing="ij")
    idx = np.stack(idx, axis=0)  # (n,) + grid.shape, signed indices
    target = np.tensordot(M, idx, axes=([1], [0]))
    storage = np.mod(target, grid.N)
    return values[tuple(storage)]
