"""Smoothness seminorms and coefficient decay/growth profiling.

The test-function side of the space family is probed numerically: the
derivative seminorm takes the largest space norm over spectral derivatives
up to a given order, and the profiles summarize how the per-frequency
discrete norms of the analysis coefficients behave against polynomial
weights.  Rapidly decreasing profiles (every positive weight order stays
bounded) signal smooth-class inputs; profiles that are only tamed by
negative weight orders signal distributional-class inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import GridMismatch
from .gabor import GaborSystem, analyze
from .grid import (
    CoeffArray,
    GridLattice,
    GridSignal,
    grids_compatible,
    lattice_superposition,
    spectral_derivative,
)
from .lattice import PowerWeight
from .spaces import (
    DiscreteNormRequest,
    SpaceSpec,
    continuous_norm,
    discrete_norm,
    solid_discrete_norm,
)

# Spectral differentiation stays trustworthy to roughly this order at the
# grid sizes this package targets.
MAX_DERIVATIVE_ORDER = 6

# Re-exported here because the superposition operator is part of this
# module's public surface alongside its continuity diagnostics.
translate_superposition = lattice_superposition


def multi_indices(dim: int, max_order: int) -> list[tuple[int, ...]]:
    """All derivative multi-indices with total order at most max_order."""
    return [
        alpha
        for alpha in product(range(max_order + 1), repeat=dim)
        if sum(alpha) <= max_order
    ]


def _check_order(order: int) -> int:
    order = int(order)
    if not 0 <= order <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order must lie in 0..{MAX_DERIVATIVE_ORDER}")
    return order


def smoothness_seminorm(f: GridSignal, spec: SpaceSpec, order: int) -> float:
    """max over |alpha| <= order of the space norm of the alpha-th derivative."""
    order = _check_order(order)
    best = 0.0
    for alpha in multi_indices(f.grid.dim, order):
        g = spectral_derivative(f, alpha) if any(alpha) else f
        best = max(best, continuous_norm(g, spec))
    return best


def schwartz_seminorm(f: GridSignal, order: int) -> float:
    """sup over |alpha| <= order and nodes of |f^(alpha)(x)| (1+|x|)^order."""
    order = _check_order(order)
    w = PowerWeight(float(order))(f.grid.centered_nodes())
    best = 0.0
    for alpha in multi_indices(f.grid.dim, order):
        g = spectral_derivative(f, alpha) if any(alpha) else f
        best = max(best, float(np.max(np.abs(g.values) * w)))
    return best


def convolve_samples(e: GridSignal, phi: GridSignal, lat: GridLattice) -> CoeffArray:
    """Quadrature-weighted periodic convolution e * phi sampled on a lattice."""
    if not grids_compatible(e.grid, phi.grid):
        raise GridMismatch("signals live on different grids")
    if not grids_compatible(lat.grid, e.grid):
        raise GridMismatch("lattice lives on a different grid")
    grid = e.grid
    cell = grid.spacing ** grid.dim
    conv = cell * np.fft.ifftn(
        np.fft.fftn(e.reshaped()) * np.fft.fftn(phi.reshaped())
    )
    idx = lat.index_points
    flat = idx[:, 0] if grid.dim == 1 else idx[:, 0] * grid.points_per_axis + idx[:, 1]
    return CoeffArray.over_lattice(lat, conv.ravel()[flat])


@dataclass(frozen=True, eq=False)
class DecayProfile:
    """Per-frequency discrete norms of analysis coefficients with weighted sups.

    ``decay_sups[N]`` is sup over lambda1 of slice_norm * (1+|lambda1|)^N and
    ``growth_sups[N]`` uses the weight (1+|lambda1|)^-N, for N = 0..order.
    ``fitted_order`` is the least-squares slope of log slice_norm against
    log(1+|lambda1|); ``bounded_order`` is the smallest N whose growth-side
    weighted profile is dominated by the inner half of the frequency range
    (None when even the largest N fails).
    """

    freq_points: np.ndarray
    slice_norms: np.ndarray
    decay_sups: np.ndarray
    growth_sups: np.ndarray
    fitted_order: float
    bounded_order: int | None

    @property
    def order(self) -> int:
        return len(self.decay_sups) - 1

    def passes_decay(self, ratio_limit: float = 10.0) -> bool:
        """Rapid-decay signature: every weighted sup finite and the top
        weight order within ratio_limit of the unweighted sup."""
        if not np.all(np.isfinite(self.decay_sups)):
            return False
        if self.decay_sups[0] == 0.0:
            return True
        return bool(self.decay_sups[-1] <= ratio_limit * self.decay_sups[0])


def _bounded_order(radii: np.ndarray, norms: np.ndarray, max_order: int,
                   margin: float = 10.0) -> int | None:
    """Smallest N with the (1+r)^-N weighted sup within margin of the inner
    half's unweighted peak; an all-zero profile is bounded at order zero."""
    peak = float(np.max(norms))
    if peak == 0.0:
        return 0
    inner = norms[radii <= radii.max() / 2 + 1e-12]
    inner_peak = float(np.max(inner)) if inner.size else 0.0
    if inner_peak == 0.0:
        return None
    for order in range(max_order + 1):
        weighted = norms * (1.0 + radii) ** (-order)
        if float(np.max(weighted)) <= margin * inner_peak:
            return order
    return None


def _profile(system: GaborSystem, f: GridSignal, spec: SpaceSpec,
             window: GridSignal | None, max_order: int) -> DecayProfile:
    max_order = _check_order(max_order)
    coeffs = analyze(system, f)
    time_lat = system.time_lattice
    slices = coeffs.values  # (N0, N1)
    norms = np.empty(slices.shape[1])
    for j in range(slices.shape[1]):
        col = CoeffArray.over_lattice(time_lat, slices[:, j])
        if window is None:
            norms[j] = solid_discrete_norm(col, spec)
        else:
            norms[j] = discrete_norm(DiscreteNormRequest(spec, time_lat, window, col))
    pts = system.freq_lattice.centered_points
    radii = np.linalg.norm(pts, axis=-1)
    orders = np.arange(max_order + 1)
    decay = np.array([np.max(norms * (1.0 + radii) ** n) for n in orders])
    growth = np.array([np.max(norms * (1.0 + radii) ** (-n)) for n in orders])

    floor = float(np.max(norms)) * 1e-15
    mask = norms > max(floor, 0.0)
    if np.count_nonzero(mask) >= 2 and np.ptp(np.log1p(radii[mask])) > 0:
        slope = np.polyfit(np.log1p(radii[mask]), np.log(norms[mask]), 1)[0]
    else:
        slope = 0.0
    return DecayProfile(
        freq_points=pts,
        slice_norms=norms,
        decay_sups=decay,
        growth_sups=growth,
        fitted_order=float(slope),
        bounded_order=_bounded_order(radii, norms, max_order),
    )


def decay_profile(system: GaborSystem, f: GridSignal, spec: SpaceSpec,
                  window: GridSignal | None = None,
                  max_order: int = MAX_DERIVATIVE_ORDER) -> DecayProfile:
    """Profile oriented at the rapid-decay test; see DecayProfile.

    Slice norms use the solid sequence shortcut when the space is solid and
    no window is supplied, otherwise the discrete norm with the window.
    """
    return _profile(system, f, spec, window, max_order)


def growth_profile(system: GaborSystem, f: GridSignal, spec: SpaceSpec,
                   window: GridSignal | None = None,
                   max_order: int = MAX_DERIVATIVE_ORDER) -> DecayProfile:
    """Same computation as decay_profile; consumers read the growth-side
    fields (growth_sups, bounded_order) for slowly increasing inputs."""
    return _profile(system, f, spec, window, max_order)
