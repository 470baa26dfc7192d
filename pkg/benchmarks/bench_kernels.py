"""Compare the numba and pure-numpy hot-kernel paths.

Times the spline rotation and the brute-force convolution in both
backends inside one process (the numba path is skipped automatically if
numba is unavailable or RADIALMULT_NO_NUMBA is set).

Usage: python benchmarks/bench_kernels.py [--grid 64] [--repeats 5]
"""

import argparse
import time

import numpy as np

from radialmult import make_grid
from radialmult import _kernels


def _time(fn, repeats):
    fn()  # warm up (includes jit compilation for the numba path)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rotate(N, repeats):
    g = make_grid(2, N, float(N) / 4.0)
    rng = np.random.default_rng(0)
    vals = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    th = 0.37
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    idx = g.index_axis()
    coeffs = _kernels.spline_prefilter(vals)
    rows = [("rotate/numpy", _time(lambda: _kernels._rotate_spline_numpy(coeffs, R, idx.astype(float)), repeats))]
    if _kernels.USING_NUMBA:
        c = np.ascontiguousarray(coeffs)
        rows.append(
            ("rotate/numba", _time(lambda: _kernels._rotate_spline_2d_numba(c, R, idx.astype(float)), repeats))
        )
    return rows


def bench_convolve(N, repeats):
    g = make_grid(2, N, float(N) / 4.0)
    rng = np.random.default_rng(1)
    K = rng.standard_normal(g.shape) + 0j
    f = rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape)
    offsets = _kernels._offsets_table(g.shape)
    kflat = K.reshape(-1)
    fflat = f.reshape(-1)
    vol = g.dx**2
    rows = [
        (
            "convolve/numpy",
            _time(lambda: (kflat[offsets] * fflat[None, :]).sum(axis=1) * vol, repeats),
        )
    ]
    if _kernels.USING_NUMBA:
        rows.append(
            (
                "convolve/numba",
                _time(lambda: _kernels._direct_convolve_flat_numba(kflat, fflat, offsets, vol), repeats),
            )
        )
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=64, help="points per axis for the rotation bench")
    ap.add_argument("--conv-grid", type=int, default=24, help="points per axis for the convolution bench")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    print(f"backend: {'numba' if _kernels.USING_NUMBA else 'numpy only'}")
    rows = bench_rotate(args.grid, args.repeats) + bench_convolve(args.conv_grid, args.repeats)
    width = max(len(name) for name, _ in rows)
    base = {}
    for name, t in rows:
        kind = name.split("/")[0]
        base.setdefault(kind, t)
        speed = base[kind] / t
        print(f"{name:<{width}}  {t * 1e3:9.3f} ms   x{speed:.1f}")


if __name__ == "__main__":
    main()
