"""Periodic grid, discrete Fourier transforms and L^p norms.

The torus [-L/2, L/2)^n is sampled with N points per axis at spacing
dx = L/N; the dual frequency lattice has spacing dxi = 2*pi/L and runs
over j*dxi for j in {-N/2, ..., N/2 - 1} per axis.

Storage order
-------------
Arrays are stored in standard FFT order: index 0 holds the x = 0
(resp. xi = 0) sample, indices 1..N/2-1 the positive coordinates and
indices N/2..N-1 the negative ones (index N/2 is the Nyquist row
-N/2 * dxi, which has no positive partner on the lattice).  Public
helpers `space_mesh` and `frequency_mesh` return physical coordinates
in this same storage order, so callers never touch raw indices.

Transform scaling carries physical units: the forward transform
multiplies the FFT sum by dx^n, the inverse divides the inverse sum by
L^n.  With this convention symbols given by continuum formulas act
unchanged, and a discrete delta of height 1/dx^n transforms to the
constant 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FrequencyGrid",
    "GridFunction",
    "VectorGridFunction",
    "make_grid",
    "transform",
    "lp_norm",
]


@dataclass(frozen=True)
class FrequencyGrid:
    """Paired space/frequency lattices for the periodic box [-L/2, L/2)^n."""

    n: int
    N: int
    L: float

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.L

    @property
    def xi_max(self) -> float:
        """Nyquist radius pi*N/L."""
        return np.pi * self.N / self.L

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def num_points(self) -> int:
        return self.N**self.n

    def index_axis(self) -> np.ndarray:
        """Signed lattice indices j in FFT storage order: 0..N/2-1, -N/2..-1."""
        half = self.N // 2
        return np.concatenate([np.arange(0, half), np.arange(-half, 0)])

    def space_axis(self) -> np.ndarray:
        """Spatial coordinates per axis, in storage order."""
        return self.index_axis() * self.dx

    def frequency_axis(self) -> np.ndarray:
        """Frequencies per axis, in storage order."""
        return self.index_axis() * self.dxi

    def space_mesh(self) -> np.ndarray:
        """Array of shape (N,)*n + (n,) of physical x coordinates."""
        axes = np.meshgrid(*([self.space_axis()] * self.n), indexing="ij")
        return np.stack(axes, axis=-1)

    def frequency_mesh(self) -> np.ndarray:
        """Array of shape (N,)*n + (n,) of physical xi coordinates."""
        axes = np.meshgrid(*([self.frequency_axis()] * self.n), indexing="ij")
        return np.stack(axes, axis=-1)

    def nyquist_mask(self) -> np.ndarray:
        """Boolean mask, True on lattice points with any index = -N/2.

        The Nyquist row has no mirror partner under xi -> -xi, so it is
        excluded from rotation-symmetry assertions.
        """
        half = self.N // 2
        mask = np.zeros(self.shape, dtype=bool)
        for axis in range(self.n):
            sl = [slice(None)] * self.n
            sl[axis] = half
            mask[tuple(sl)] = True
        return mask


def make_grid(n: int, N: int, L: float) -> FrequencyGrid:
    """Build a grid after validating (n, N, L)."""
    if n not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    if not isinstance(N, (int, np.integer)) or N < 4 or N % 2 != 0:
        raise ValueError(f"points per axis must be an even integer >= 4, got {N}")
    if not L > 0:
        raise ValueError(f"extent must be positive, got {L}")
    return FrequencyGrid(n=int(n), N=int(N), L=float(L))


@dataclass(frozen=True)
class GridFunction:
    """Complex scalar function sampled on the grid, tagged space or frequency."""

    grid: FrequencyGrid
    values: np.ndarray
    domain: str = "space"

    def __post_init__(self):
        if self.domain not in ("space", "frequency"):
            raise ValueError(f"domain must be 'space' or 'frequency', got {self.domain!r}")
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class VectorGridFunction:
    """Function on the grid valued in X = l_q^d (fiber dimension d, exponent q)."""

    grid: FrequencyGrid
    d: int
    q: float
    values: np.ndarray
    domain: str = "space"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"fiber dimension must be >= 1, got {self.d}")
        if self.q < 1:
            raise ValueError(f"fiber exponent must satisfy q >= 1, got {self.q}")
        if self.domain not in ("space", "frequency"):
            raise ValueError(f"domain must be 'space' or 'frequency', got {self.domain!r}")
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape + (self.d,):
            raise ValueError(
                f"values shape {values.shape} does not match {self.grid.shape + (self.d,)}"
            )
        object.__setattr__(self, "values", values)

    def fiber_norms(self) -> np.ndarray:
        """Pointwise l_q norm of the fiber, real array of grid shape."""
        if np.isinf(self.q):
            return np.max(np.abs(self.values), axis=-1)
        return np.sum(np.abs(self.values) ** self.q, axis=-1) ** (1.0 / self.q)


def transform(f: GridFunction, direction: str) -> GridFunction:
    """Discrete Fourier transform with physical-unit scaling.

    forward:  fhat(xi_j) = dx^n * sum_k f(x_k) exp(-i <x_k, xi_j>)
    inverse:  f(x_k) = L^-n * sum_j fhat(xi_j) exp(+i <x_k, xi_j>)

    The round trip is the identity to machine precision.
    """
    grid = f.grid
    if direction == "forward":
        if f.domain != "space":
            raise ValueError("forward transform expects a space-domain function")
        out = np.fft.fftn(f.values) * grid.dx**grid.n
        return GridFunction(grid, out, domain="frequency")
    if direction == "inverse":
        if f.domain != "frequency":
            raise ValueError("inverse transform expects a frequency-domain function")
        out = np.fft.ifftn(f.values) * (grid.N**grid.n / grid.L**grid.n)
        return GridFunction(grid, out, domain="space")
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def lp_norm(f: GridFunction | VectorGridFunction, p: float) -> float:
    """Discrete L^p norm with volume weights dx^n; fiber l_q norm first for vectors."""
    if p < 1:
        raise ValueError(f"exponent must satisfy p >= 1, got {p}")
    if f.domain != "space":
        raise ValueError("lp_norm expects a space-domain function")
    if isinstance(f, VectorGridFunction):
        mags = f.fiber_norms()
    else:
        mags = np.abs(f.values)
    if np.isinf(p):
        return float(np.max(mags))
    vol = f.grid.dx**f.grid.n
    return float((np.sum(mags**p) * vol) ** (1.0 / p))
