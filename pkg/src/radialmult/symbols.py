"""Multiplier symbols: a closed-form catalog, grid samples and radial profiles.

A symbol is a complex function of frequency.  Three representations:

* ``NamedSymbol`` -- closed-form catalog entry, evaluable anywhere.
* ``SampledSymbol`` -- values on the frequency lattice of one grid,
  evaluable only at lattice points (exact match within 1e-9 * dxi).
* ``RadialSymbol`` -- a radial profile interpolated at |xi|, evaluable
  anywhere and rotation invariant by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import FrequencyGrid

__all__ = [
    "Symbol",
    "NamedSymbol",
    "SampledSymbol",
    "RadialSymbol",
    "RadialProfile",
    "make_named_symbol",
    "eval_symbol",
    "sample_symbol",
    "parse_symbol_spec",
]

#: Exact-match tolerance for lattice lookups, as a fraction of dxi.
LATTICE_MATCH_TOL = 1e-9


class Symbol:
    """Base class; subclasses implement vector evaluation at (..., n) points."""

    n: int

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an array of frequency points of shape (..., n)."""
        raise NotImplementedError

    def __call__(self, points) -> np.ndarray:
        return self.evaluate(np.asarray(points, dtype=float))


@dataclass(frozen=True)
class RadialProfile:
    """Piecewise-linear profile on radii 0 = r_0 < r_1 < ... < r_K.

    Evaluation clamps to the endpoint values outside [0, r_K].
    """

    radii: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if radii.ndim != 1 or radii.size < 2:
            raise ValueError("profile needs at least two radii")
        if radii[0] != 0.0:
            raise ValueError("profile radii must start at 0")
        if not np.all(np.diff(radii) > 0):
            raise ValueError("profile radii must be strictly increasing")
        if values.shape != radii.shape:
            raise ValueError("profile values must match radii in length")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)

    def __call__(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        re = np.interp(r, self.radii, self.values.real)
        im = np.interp(r, self.radii, self.values.imag)
        return re + 1j * im


# name -> (required params, validator). Validation errors name the offender.
def _check_spd(A: np.ndarray, n: int) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.shape != (n, n):
        raise ValueError(f"matrix parameter must be {n}x{n}, got shape {A.shape}")
    if not np.allclose(A, A.T, atol=1e-12):
        raise ValueError("matrix parameter must be symmetric")
    if np.min(np.linalg.eigvalsh(A)) <= 0:
        raise ValueError("matrix parameter must be positive definite")
    return A


def _check_positive(value, what: str) -> float:
    value = float(value)
    if not value > 0:
        raise ValueError(f"{what} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class NamedSymbol(Symbol):
    """Closed-form catalog symbol.

    Catalog: constant(c), gaussian_aniso(A), heat(t), poisson(t),
    ball_indicator(rho), box_indicator(a), riesz(j), bochner_riesz(delta),
    monomial(alpha), modulation(a).  The Riesz symbol xi_j/|xi| is
    assigned the value 0 at the origin, which keeps its odd symmetry
    exact on symmetric node sets.
    """

    name: str
    params: dict
    n: int

    def __post_init__(self):
        _validate_named(self.name, self.params, self.n)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.n:
            raise ValueError(f"points must have last axis {self.n}, got {points.shape}")
        name, p = self.name, self.params
        if name == "constant":
            return np.full(points.shape[:-1], complex(p["c"]))
        if name == "gaussian_aniso":
            A = np.asarray(p["A"], dtype=float)
            quad = np.einsum("...i,ij,...j->...", points, A, points)
            return np.exp(-quad).astype(complex)
        if name == "heat":
            return np.exp(-p["t"] * np.sum(points**2, axis=-1)).astype(complex)
        if name == "poisson":
            return np.exp(-p["t"] * np.linalg.norm(points, axis=-1)).astype(complex)
        if name == "ball_indicator":
            return (np.linalg.norm(points, axis=-1) <= p["rho"]).astype(complex)
        if name == "box_indicator":
            return (np.max(np.abs(points), axis=-1) <= p["a"]).astype(complex)
        if name == "riesz":
            j = p["j"] - 1
            norms = np.linalg.norm(points, axis=-1)
            with np.errstate(invalid="ignore", divide="ignore"):
                out = np.where(norms > 0, points[..., j] / np.where(norms > 0, norms, 1.0), 0.0)
            return out.astype(complex)
        if name == "bochner_riesz":
            base = np.clip(1.0 - np.sum(points**2, axis=-1), 0.0, None)
            return (base ** p["delta"]).astype(complex)
        if name == "monomial":
            alpha = p["alpha"]
            out = np.ones(points.shape[:-1])
            for i, a in enumerate(alpha):
                if a:
                    out = out * points[..., i] ** a
            return out.astype(complex)
        if name == "modulation":
            a = np.asarray(p["a"], dtype=float)
            return np.exp(1j * np.tensordot(points, a, axes=([-1], [0])))
        raise ValueError(f"unknown symbol name {name!r}")  # unreachable after validation


def _validate_named(name: str, params: dict, n: int) -> None:
    if n not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    if name == "constant":
        complex(params["c"])
    elif name == "gaussian_aniso":
        _check_spd(params["A"], n)
    elif name in ("heat", "poisson"):
        _check_positive(params["t"], "t")
    elif name == "ball_indicator":
        _check_positive(params["rho"], "rho")
    elif name == "box_indicator":
        _check_positive(params["a"], "a")
    elif name == "riesz":
        j = int(params["j"])
        if not 1 <= j <= n:
            raise ValueError(f"component index must be in 1..{n}, got {j}")
    elif name == "bochner_riesz":
        if float(params["delta"]) < 0:
            raise ValueError("delta must be nonnegative")
    elif name == "monomial":
        alpha = tuple(int(a) for a in params["alpha"])
        if len(alpha) != n or any(a < 0 for a in alpha):
            raise ValueError(f"alpha must be {n} nonnegative integers, got {params['alpha']}")
    elif name == "modulation":
        a = np.asarray(params["a"], dtype=float)
        if a.shape != (n,):
            raise ValueError(f"shift vector must have length {n}")
    else:
        raise ValueError(f"unknown symbol name {name!r}")


def make_named_symbol(name: str, params: dict, n: int) -> NamedSymbol:
    """Build a catalog symbol, normalizing parameter types."""
    params = dict(params)
    if name == "gaussian_aniso":
        params["A"] = _check_spd(params["A"], n)
    if name == "monomial":
        params["alpha"] = tuple(int(a) for a in params["alpha"])
    if name == "modulation":
        params["a"] = tuple(float(v) for v in np.asarray(params["a"], dtype=float))
    return NamedSymbol(name=name, params=params, n=n)


@dataclass(frozen=True)
class SampledSymbol(Symbol):
    """Symbol known only on the frequency lattice of one grid.

    values are stored in the grid's FFT storage order.
    """

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.grid.n

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.grid.n:
            raise ValueError(f"points must have last axis {self.grid.n}")
        dxi = self.grid.dxi
        idx = np.round(points / dxi).astype(int)
        if np.max(np.abs(points - idx * dxi)) > LATTICE_MATCH_TOL * dxi:
            raise ValueError("off-lattice query on a sampled symbol")
        half = self.grid.N // 2
        if np.any(idx < -half) or np.any(idx >= half):
            raise ValueError("frequency outside the lattice range of the sampled symbol")
        storage = np.mod(idx, self.grid.N)
        return self.values[tuple(np.moveaxis(storage, -1, 0))]


@dataclass(frozen=True)
class RadialSymbol(Symbol):
    """Symbol xi -> profile(|xi|); rotation invariant by construction."""

    profile: RadialProfile
    n: int

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.n:
            raise ValueError(f"points must have last axis {self.n}")
        return self.profile(np.linalg.norm(points, axis=-1))


def eval_symbol(phi: Symbol, xi) -> complex:
    """Evaluate a symbol at a single frequency point."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return complex(phi.evaluate(xi))


def sample_symbol(phi: Symbol, grid: FrequencyGrid) -> SampledSymbol:
    """Sample a symbol on the frequency lattice; idempotent for same-grid samples."""
    if isinstance(phi, SampledSymbol):
        if phi.grid != grid:
            raise ValueError("sampled symbol belongs to a different grid")
        return phi
    if phi.n != grid.n:
        raise ValueError(f"symbol dimension {phi.n} does not match grid dimension {grid.n}")
    return SampledSymbol(grid=grid, values=phi.evaluate(grid.frequency_mesh()))


# --- CLI mini-language ------------------------------------------------------
#
# Spec strings look like  name:key=val,key=val  e.g. heat:t=1.0 or
# gaussaniso:a11=1,a22=4.  Alias table maps short CLI names to catalog ids.

_ALIASES = {
    "const": "constant",
    "constant": "constant",
    "heat": "heat",
    "poisson": "poisson",
    "gaussaniso": "gaussian_aniso",
    "ballind": "ball_indicator",
    "boxind": "box_indicator",
    "riesz": "riesz",
    "bochnerriesz": "bochner_riesz",
    "monomial": "monomial",
    "modulation": "modulation",
}


class SymbolSpecError(ValueError):
    """Parse error in a CLI symbol spec, annotated with the failing position."""

    def __init__(self, spec: str, pos: int, message: str):
        super().__init__(f"bad symbol spec {spec!r} at position {pos}: {message}")
        self.pos = pos


def parse_symbol_spec(spec: str, n: int) -> NamedSymbol:
    """Parse `name:key=val,...` into a catalog symbol for dimension n."""
    head, sep, tail = spec.partition(":")
    if head not in _ALIASES:
        raise SymbolSpecError(spec, 0, f"unknown symbol name {head!r}")
    kv: dict[str, float] = {}
    pos = len(head) + len(sep)
    if sep and tail:
        for item in tail.split(","):
            if "=" not in item:
                raise SymbolSpecError(spec, pos, f"expected key=value, got {item!r}")
            key, val = item.split("=", 1)
            try:
                kv[key.strip()] = float(val)
            except ValueError:
                raise SymbolSpecError(spec, pos + len(key) + 1, f"bad number {val!r}") from None
            pos += len(item) + 1
    name = _ALIASES[head]
    try:
        params = _assemble_params(name, kv, n)
        return make_named_symbol(name, params, n)
    except (KeyError, ValueError) as exc:
        raise SymbolSpecError(spec, len(head) + 1, str(exc)) from None


def _assemble_params(name: str, kv: dict[str, float], n: int) -> dict:
    if name == "constant":
        return {"c": kv.get("c", 1.0)}
    if name in ("heat", "poisson"):
        return {"t": kv.get("t", 1.0)}
    if name == "gaussian_aniso":
        A = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                key = f"a{i + 1}{j + 1}"
                if key in kv:
                    A[i, j] = kv[key]
                    A[j, i] = kv[key]
        for i in range(n):
            if A[i, i] == 0.0:
                A[i, i] = 1.0
        return {"A": A}
    if name == "ball_indicator":
        return {"rho": kv.get("rho", kv.get("r", 1.0))}
    if name == "box_indicator":
        return {"a": kv.get("a", 1.0)}
    if name == "riesz":
        return {"j": int(kv.get("j", 1))}
    if name == "bochner_riesz":
        return {"delta": kv.get("delta", 1.0)}
    if name == "monomial":
        return {"alpha": tuple(int(kv.get(f"a{i + 1}", 0)) for i in range(n))}
    if name == "modulation":
        return {"a": tuple(kv.get(f"a{i + 1}", 0.0) for i in range(n))}
    raise ValueError(f"unknown symbol name {name!r}")
