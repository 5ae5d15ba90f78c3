"""Concrete translation/modulation-invariant norms and their discrete spaces.

Four space kinds are implemented on grid signals:

* ``Lp_w``       weighted Lebesgue norm (spacing^n quadrature),
* ``C0_w``       sup norm with a vanishing-at-infinity flag; on a compact
                 grid it coincides with the weighted sup norm,
* ``MixedLp``    mixed norm, inner exponent over the second axis, outer
                 over the first (2-d grids only),
* ``FourierLp_w`` the Lp_w norm of the inverse Fourier transform, taken on
                 the reciprocal grid with continuum frequency scaling.

Weights are power weights (1+|x|)^tau evaluated at symmetric
representatives, so the grid behaves like a box centered at the origin.

The discrete space attached to a lattice norms a sequence c by the norm of
the superposition sum_lambda c_lambda T_lambda(chi) for a compactly
supported window chi with pairwise disjoint translates.  Solid kinds admit
the direct weighted sequence norm; Fourier kinds admit the periodic
Fourier-series realization over a fundamental domain of the dual lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexMismatch,
    NonAlignedLattice,
    NotSolid,
    OverlappingSupports,
)
from .grid import (
    CoeffArray,
    GridLattice,
    GridSignal,
    grids_compatible,
    lattice_superposition,
    modulation_phases,
)
from .lattice import PowerWeight, dual_lattice

_KINDS = ("Lp_w", "C0_w", "MixedLp", "FourierLp_w")


@dataclass(frozen=True)
class SpaceSpec:
    """Descriptor of a concrete space norm."""

    kind: str
    p: float = 2.0
    p2: float | None = None
    weight: PowerWeight = field(default_factory=PowerWeight)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        exps = [self.p] + ([self.p2] if self.kind == "MixedLp" else [])
        if self.kind == "MixedLp" and self.p2 is None:
            raise ValueError("MixedLp needs both exponents")
        for q in exps:
            if not (q is not None and 1.0 <= q):
                raise ValueError(f"exponent must lie in [1, inf], got {q}")

    @property
    def is_solid(self) -> bool:
        return self.kind in ("Lp_w", "C0_w", "MixedLp")

    @property
    def tau(self) -> float:
        return self.weight.exponent

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "tau": self.tau}
        if self.kind != "C0_w":
            out["p"] = "inf" if math.isinf(self.p) else float(self.p)
        if self.kind == "MixedLp":
            out["p2"] = "inf" if math.isinf(self.p2) else float(self.p2)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SpaceSpec":
        def exponent(v):
            return math.inf if v in ("inf", None) else float(v)

        kind = data.get("kind")
        if kind not in _KINDS:
            raise ValueError(f"unknown space kind {kind!r}")
        p = exponent(data.get("p", data.get("p1", 2.0)))
        p2 = exponent(data["p2"]) if "p2" in data else None
        return cls(kind, p, p2, PowerWeight(float(data.get("tau", 0.0))))


def _p_norm(values: np.ndarray, p: float, cell: float, axis=None) -> np.ndarray | float:
    if math.isinf(p):
        return np.max(values, axis=axis)
    return (cell * np.sum(values ** p, axis=axis)) ** (1.0 / p)


def continuous_norm(f: GridSignal, spec: SpaceSpec) -> float:
    """Quadrature norm of a grid signal in the requested space."""
    grid = f.grid
    if spec.kind == "FourierLp_w":
        rec = grid.reciprocal()
        scale = grid.period ** grid.dim
        inverse = scale * np.fft.ifftn(f.reshaped()).ravel()
        inner = SpaceSpec("Lp_w", spec.p, weight=spec.weight)
        return continuous_norm(GridSignal(rec, inverse), inner)

    weighted = np.abs(f.values) * spec.weight(f.grid.centered_nodes())
    cell = grid.spacing ** grid.dim
    if spec.kind in ("Lp_w", "C0_w"):
        p = math.inf if spec.kind == "C0_w" else spec.p
        return float(_p_norm(weighted, p, cell))
    if spec.kind == "MixedLp":
        if grid.dim != 2:
            raise DimensionMismatch("MixedLp requires a 2-d grid")
        table = weighted.reshape(grid.shape)
        inner = _p_norm(table, spec.p2, grid.spacing, axis=1)
        return float(_p_norm(inner, spec.p, grid.spacing))
    raise AssertionError("unreachable")


def check_disjoint_supports(window: GridSignal, lat: GridLattice) -> None:
    """Raise unless the lattice translates of the window support are disjoint."""
    if not grids_compatible(window.grid, lat.grid):
        raise DimensionMismatch("window and lattice live on different grids")
    support = (np.abs(window.values) > 0).reshape(window.grid.shape)
    if not support.any():
        raise OverlappingSupports("window is identically zero")
    coverage = np.zeros(window.grid.shape, dtype=np.int64)
    axes = tuple(range(window.grid.dim))
    for idx in lat.index_points:
        coverage += np.roll(support, shift=tuple(idx), axis=axes)
    if coverage.max() > 1:
        raise OverlappingSupports(
            "lattice translates of the window support overlap on the grid"
        )


@dataclass(frozen=True, eq=False)
class DiscreteNormRequest:
    """Inputs for one discrete-space norm evaluation."""

    space: SpaceSpec
    lattice: GridLattice
    window: GridSignal
    coeffs: CoeffArray

    def __post_init__(self):
        lat = self.coeffs.lattice
        if lat.count != self.lattice.count or not np.array_equal(
            lat.index_points, self.lattice.index_points
        ):
            raise IndexMismatch("coefficients are indexed by a different lattice")


def discrete_norm(req: DiscreteNormRequest) -> float:
    """Norm of sum_lambda c_lambda T_lambda(window) in the requested space."""
    check_disjoint_supports(req.window, req.lattice)
    return continuous_norm(lattice_superposition(req.coeffs, req.window), req.space)


def _separable_counts(lat: GridLattice) -> tuple[int, int]:
    steps = lat.steps
    if lat.grid.dim != 2 or steps[0, 1] != 0 or steps[1, 0] != 0:
        raise NotSolid("mixed sequence norms need a separable 2-d lattice")
    L = lat.grid.points_per_axis
    n0 = L // math.gcd(int(abs(steps[0, 0])), L)
    n1 = L // math.gcd(int(abs(steps[1, 1])), L)
    return n0, n1


def solid_discrete_norm(coeffs: CoeffArray, spec: SpaceSpec) -> float:
    """Weighted sequence norm realizing the discrete space of a solid kind."""
    if not spec.is_solid:
        raise NotSolid(f"{spec.kind} has no solid sequence shortcut")
    lat = coeffs.lattice
    weighted = np.abs(coeffs.values) * spec.weight(lat.centered_points)
    if spec.kind in ("Lp_w", "C0_w"):
        p = math.inf if spec.kind == "C0_w" else spec.p
        return float(_p_norm(weighted, p, 1.0))
    n0, n1 = _separable_counts(lat)
    table = weighted.reshape(n0, n1)
    inner = _p_norm(table, spec.p2, 1.0, axis=1)
    return float(_p_norm(inner, spec.p, 1.0))


def fourier_side_norm(coeffs: CoeffArray, spec: SpaceSpec) -> float:
    """Norm of the periodic series sum_lambda c_lambda e^{2 pi i lambda.x}
    restricted to a fundamental domain of the dual lattice.

    Realizes the Fourier-coefficient description of the discrete space of a
    Fourier kind.  The index lattice must consist of grid frequencies and
    its dual lattice must be grid-aligned.
    """
    if spec.kind != "FourierLp_w":
        raise ValueError("fourier_side_norm needs a FourierLp_w space")
    lat = coeffs.lattice
    grid = lat.grid
    freqs = lat.points * grid.period
    if np.max(np.abs(freqs - np.rint(freqs))) > 1e-9:
        raise NonAlignedLattice("lattice points are not grid frequencies")
    m = np.rint(freqs).astype(np.int64)
    dual = GridLattice(dual_lattice(lat.lattice), grid)  # raises if misaligned

    g = np.zeros(grid.size, dtype=complex)
    for c, mv in zip(coeffs.values, m):
        g += c * modulation_phases(grid, mv)

    # Fundamental domain A_dual [0,1)^n, half open.
    y = np.linalg.solve(dual.lattice.generator, grid.nodes().T).T
    inside = np.all((y > -1e-9) & (y < 1.0 - 1e-9), axis=-1)
    inner = SpaceSpec("Lp_w", spec.p, weight=spec.weight)
    return continuous_norm(GridSignal(grid, np.where(inside, g, 0.0)), inner)


def _magnitudes(coeffs: CoeffArray, value_norm) -> np.ndarray:
    vals = coeffs.values
    if value_norm is not None:
        return np.array([float(value_norm(row)) for row in vals])
    if vals.ndim != 1:
        raise ValueError("nested coefficients need an explicit value_norm")
    return np.abs(vals)


def decay_weighted_sup(coeffs: CoeffArray, order: int, value_norm=None) -> float:
    """sup over lambda of ||c_lambda|| (1+|lambda|)^order, the rapidly
    decreasing scale; nested arrays supply value_norm for ||.||."""
    mags = _magnitudes(coeffs, value_norm)
    w = PowerWeight(float(order))(coeffs.lattice.centered_points)
    return float(np.max(mags * w))


def growth_weighted_sup(coeffs: CoeffArray, order: int, value_norm=None) -> float:
    """sup over lambda of ||c_lambda|| (1+|lambda|)^(-order), the slowly
    increasing scale."""
    return decay_weighted_sup(coeffs, -int(order), value_norm)
