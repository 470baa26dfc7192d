"""Numba and pure-numpy kernel paths must agree bit-for-bit-close."""

import os
import subprocess
import sys

import numpy as np

from radialmult import make_grid
from radialmult import _kernels


def test_rotate_interp_numba_matches_numpy():
    g = make_grid(2, 32, 8.0)
    rng = np.random.default_rng(0)
    vals = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    th = 0.37
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    coeffs = _kernels.spline_prefilter(vals)
    ref = _kernels._rotate_spline_numpy(coeffs, R, g.index_axis().astype(float))
    out = _kernels.rotate_interp(vals, R, g.index_axis())
    assert np.max(np.abs(out - ref)) <= 1e-12


def test_rotate_interp_3d_agreement():
    g = make_grid(3, 8, 4.0)
    rng = np.random.default_rng(1)
    vals = rng.standard_normal(g.shape) + 0j
    th = 0.5
    R = np.array(
        [
            [np.cos(th), -np.sin(th), 0.0],
            [np.sin(th), np.cos(th), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    coeffs = _kernels.spline_prefilter(vals)
    ref = _kernels._rotate_spline_numpy(coeffs, R, g.index_axis().astype(float))
    out = _kernels.rotate_interp(vals, R, g.index_axis())
    assert np.max(np.abs(out - ref)) <= 1e-12


def test_rotate_interp_identity_reproduces_samples():
    g = make_grid(2, 16, 8.0)
    rng = np.random.default_rng(2)
    vals = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    out = _kernels.rotate_interp(vals, np.eye(2), g.index_axis())
    assert np.max(np.abs(out - vals)) <= 1e-12


def test_direct_convolve_agrees_with_fft():
    g = make_grid(2, 8, 4.0)
    rng = np.random.default_rng(3)
    K = rng.standard_normal(g.shape) + 0j
    f = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    out = _kernels.direct_convolve(K, f, g.dx**2)
    ref = np.fft.ifftn(np.fft.fftn(K) * np.fft.fftn(f)) * g.dx**2
    assert np.max(np.abs(out - ref)) <= 1e-10


def test_env_flag_disables_numba():
    code = (
        "import radialmult._kernels as k; print(k.USING_NUMBA)"
    )
    env = dict(os.environ, RADIALMULT_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "False"
