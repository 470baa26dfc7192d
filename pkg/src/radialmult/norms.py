"""Operator norm estimation for multiplier operators.

Exact values exist at p = 2 (the operator is diagonal in the discrete
Fourier basis, so the norm is the lattice sup of the symbol) and at the
endpoints p in {1, inf} (for periodic convolution both norms equal the
kernel's weighted l^1 mass).  In between, a nonlinear power iteration
supplies lower bounds and the kernel mass is an upper bound for all p
at once (Young's inequality).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import FrequencyGrid
from .multiplier import MultiplierOperator, kernel, positivity_report
from .radialize import default_radii, project
from .rotation import sphere_quadrature
from .symbols import Symbol, eval_symbol

__all__ = [
    "NormEstimate",
    "norm_p2_exact",
    "norm_lower_power",
    "norm_upper_kernel",
    "contraction_report",
    "ContractionReport",
]

#: Relative-gain stopping threshold for the power iteration.
POWER_RELATIVE_GAIN = 1e-9
DEFAULT_TRIALS = 8
DEFAULT_ITERS = 200


@dataclass(frozen=True)
class NormEstimate:
    value: float
    kind: str  # exact | lower-bound | upper-bound
    p: float | None  # None marks a p-independent bound
    method: str
    iterations: int = 0
    trials: int = 0
    seed: int | None = None
    history: tuple = ()

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("norm estimate must be nonnegative")
        if self.kind not in ("exact", "lower-bound", "upper-bound"):
            raise ValueError(f"unknown estimate kind {self.kind!r}")


def norm_p2_exact(op: MultiplierOperator) -> NormEstimate:
    """L^2 -> L^2 norm: sup of |symbol| over the lattice (Plancherel)."""
    return NormEstimate(
        value=float(np.max(np.abs(op.sampled))), kind="exact", p=2.0, method="plancherel-sup"
    )


def norm_upper_kernel(op: MultiplierOperator, p: float | None = None) -> NormEstimate:
    """Kernel l^1 mass: an upper bound for every p, exact at p in {1, inf}.

    For a nonnegative kernel the mass equals phi(0), which is the exact
    norm for all p.
    """
    K = kernel(op).values
    value = float(np.sum(np.abs(K)) * op.grid.dx**op.grid.n)
    kind = "exact" if p in (1.0, float("inf")) else "upper-bound"
    return NormEstimate(value=value, kind=kind, p=p, method="kernel-l1")


def _phase(y: np.ndarray) -> np.ndarray:
    mags = np.abs(y)
    return np.where(mags > 0, y / np.where(mags > 0, mags, 1.0), 0.0)


def norm_lower_power(
    op: MultiplierOperator,
    p: float,
    trials: int = DEFAULT_TRIALS,
    iters: int = DEFAULT_ITERS,
    rng: np.random.Generator | None = None,
    seed: int | None = None,
) -> NormEstimate:
    """Lower bound on the L^p -> L^p norm by nonlinear power iteration.

    One step: y = A x with ||x||_p = 1; gradient direction s = |y|^(p-1)
    phase(y); pull back z = A* s (conjugate symbol, volume weights
    cancel on the uniform grid); next iterate x = |z|^(p'-1) phase(z)
    renormalized.  The estimate ||y||_p is nondecreasing; iteration
    stops at relative gain below POWER_RELATIVE_GAIN.  Best value over
    random restarts is returned, deterministic for a fixed seed.
    """
    if not (1.0 < p < float("inf")):
        raise ValueError("power iteration needs p strictly between 1 and inf; "
                         "use the kernel value at the endpoints")
    if trials < 1:
        raise ValueError("need at least one trial")
    if rng is None:
        rng = np.random.default_rng(seed)
    grid = op.grid
    vol = grid.dx**grid.n
    sym = op.sampled
    sym_conj = np.conj(sym)
    q = p / (p - 1.0)

    def norm_p(x):
        return (np.sum(np.abs(x) ** p) * vol) ** (1.0 / p)

    def fwd(x):
        return np.fft.ifftn(np.fft.fftn(x) * sym)

    def adj(x):
        return np.fft.ifftn(np.fft.fftn(x) * sym_conj)

    best = 0.0
    best_iters = 0
    best_history: tuple = ()
    for _ in range(trials):
        x = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
        est_prev = 0.0
        history = []
        steps = 0
        for steps in range(1, iters + 1):
            nx = norm_p(x)
            if nx == 0.0:
                break
            x = x / nx
            y = fwd(x)
            est = norm_p(y)
            history.append(est)
            if est == 0.0:
                break
            s = np.abs(y) ** (p - 1.0) * _phase(y)
            z = adj(s)
            x = np.abs(z) ** (q - 1.0) * _phase(z)
            if est - est_prev <= POWER_RELATIVE_GAIN * est:
                break
            est_prev = est
        est = history[-1] if history else 0.0
        if est > best:
            best = est
            best_iters = steps
            best_history = tuple(history)
    return NormEstimate(
        value=best,
        kind="lower-bound",
        p=p,
        method="power-iteration",
        iterations=best_iters,
        trials=trials,
        seed=seed,
        history=best_history,
    )


@dataclass(frozen=True)
class ContractionReport:
    """Norm table for a symbol and its rotation average, with assertion flags.

    `rows` are dicts with keys target/p/method/kind/value/iters/seed.
    `flags` hold the hard pass/fail checks; `soft` records lower-bound
    comparisons that are informational only (two lower bounds do not
    order the true norms).
    """

    symbol: str
    rows: tuple
    flags: dict
    soft: dict


def contraction_report(
    phi: Symbol,
    grid: FrequencyGrid,
    p_list: tuple[float, ...],
    sphere_order: int,
    symbol_label: str = "symbol",
    trials: int = DEFAULT_TRIALS,
    iters: int = DEFAULT_ITERS,
    seed: int | None = 0,
) -> ContractionReport:
    """Compare norm estimates of M_phi against those of the radialized symbol."""
    n = grid.n
    pphi = project(phi, n, default_radii(grid), sphere_quadrature(n, sphere_order))
    ops = {"original": MultiplierOperator(phi, grid), "radialized": MultiplierOperator(pphi, grid)}

    rows = []
    estimates: dict[tuple[str, float, str], NormEstimate] = {}

    def add(target: str, est: NormEstimate):
        estimates[(target, est.p, est.kind)] = est
        rows.append(
            {
                "target": target,
                "p": est.p,
                "method": est.method,
                "kind": est.kind,
                "value": est.value,
                "iters": est.iterations,
                "seed": est.seed,
            }
        )

    for target, op in ops.items():
        add(target, norm_upper_kernel(op))
        for p in p_list:
            if p in (1.0, float("inf")):
                add(target, norm_upper_kernel(op, p=p))
            else:
                if p == 2.0:
                    add(target, norm_p2_exact(op))
                add(
                    target,
                    norm_lower_power(op, p, trials=trials, iters=iters, seed=seed),
                )

    sup_orig = float(np.max(np.abs(ops["original"].sampled)))
    sup_proj = float(np.max(np.abs(ops["radialized"].sampled)))
    upper_orig = estimates[("original", None, "upper-bound")].value
    upper_proj = estimates[("radialized", None, "upper-bound")].value

    flags = {"p2_sup_contraction": sup_proj <= sup_orig + 1e-12}
    lower_ok = True
    for p in p_list:
        key = ("radialized", p, "lower-bound")
        if key in estimates and estimates[key].value > upper_orig * (1.0 + 1e-9):
            lower_ok = False
    flags["lower_le_upper"] = lower_ok

    soft = {}
    for p in p_list:
        ko = ("original", p, "lower-bound")
        kp = ("radialized", p, "lower-bound")
        if ko in estimates and kp in estimates:
            soft[f"lower_radialized_le_lower_original_p{p}"] = (
                estimates[kp].value <= estimates[ko].value + 1e-9
            )

    if positivity_report(ops["original"]).verdict == "positive":
        phi0 = abs(eval_symbol(phi, np.zeros(n)))
        flags["positive_norm_equality"] = (
            abs(upper_orig - phi0) <= 1e-6 and abs(upper_proj - phi0) <= 1e-6
        )

    return ContractionReport(symbol=symbol_label, rows=tuple(rows), flags=flags, soft=soft)
