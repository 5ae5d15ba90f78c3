"""Short-time Fourier transform on grid signals.

The transform is the classical windowed integral

    V[k, m] = spacing^n * sum_t f(t) conj(psi(t - x_k)) exp(-2 pi i xi_m . t),

evaluated by one FFT over t per time node.  Time nodes run over the whole
grid for the full transform; frequency bins are kept in DFT order so that
bin j of row k is the frequency node labelled by ``grid.freq_integers()[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DimensionMismatch, NonAlignedLattice, ResourceLimit
from .grid import (
    CoeffArray,
    GridLattice,
    GridSignal,
    PeriodicGrid,
    grids_compatible,
    require_same_grid,
    spectral_derivative,
)

# Refuse full transforms whose output would exceed 2^26 complex entries.
_FULL_STFT_LIMIT = 2 ** 26


@dataclass(frozen=True, eq=False)
class TFArray:
    """Full time-frequency table: rows are time nodes, columns DFT bins."""

    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        if v.shape != (self.grid.size, self.grid.size):
            raise DimensionMismatch(
                f"expected shape {(self.grid.size,) * 2}, got {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _windowed_rows(f: GridSignal, psi: GridSignal, time_index: np.ndarray) -> np.ndarray:
    """DFT over t of f(t) conj(psi(t - x_k)) for each requested time index."""
    grid = f.grid
    fr = f.reshaped()
    pr = psi.reshaped()
    axes = tuple(range(grid.dim))
    rows = np.empty((time_index.shape[0], grid.size), dtype=complex)
    for i, idx in enumerate(time_index):
        shifted = np.roll(pr, shift=tuple(idx), axis=axes)
        rows[i] = np.fft.fftn(fr * np.conj(shifted)).ravel()
    return rows


def stft(f: GridSignal, psi: GridSignal) -> TFArray:
    """Full STFT over every (time node, frequency bin) pair."""
    require_same_grid(f, psi)
    grid = f.grid
    if grid.size ** 2 > _FULL_STFT_LIMIT:
        raise ResourceLimit(
            f"full STFT needs {grid.size ** 2} entries, over the 2^26 budget"
        )
    weight = grid.spacing ** grid.dim
    rows = _windowed_rows(f, psi, grid.index_vectors())
    return TFArray(grid, weight * rows)


def stft_on_lattice(f: GridSignal, psi: GridSignal,
                    time_lattice: GridLattice, freq_lattice: GridLattice) -> CoeffArray:
    """STFT restricted to the nodes of a time lattice x frequency lattice."""
    require_same_grid(f, psi)
    grid = f.grid
    if not grids_compatible(time_lattice.grid, grid):
        raise NonAlignedLattice("time lattice lives on a different grid")
    if not grids_compatible(freq_lattice.grid, grid.reciprocal()):
        raise NonAlignedLattice("frequency lattice must align with the reciprocal grid")
    weight = grid.spacing ** grid.dim
    rows = _windowed_rows(f, psi, time_lattice.index_points)
    L = grid.points_per_axis
    bins = freq_lattice.index_points
    flat_bins = bins[:, 0] if grid.dim == 1 else bins[:, 0] * L + bins[:, 1]
    values = weight * rows[:, flat_bins]
    return CoeffArray.over_product(time_lattice, freq_lattice, values)


def derivative_identity_defect(f: GridSignal, psi: GridSignal, order) -> float:
    """Discretization defect of the STFT derivative identity.

    In the continuum (2 pi i xi)^alpha V_psi f equals the binomial sum of
    STFTs of the derivatives of f against the derivatives of psi,

        sum_{beta <= alpha} C(alpha, beta) V_{psi^(alpha-beta)} f^(beta),

    exactly.  Both sides are computed independently on the grid and the
    maximum absolute entry difference is returned.
    """
    require_same_grid(f, psi)
    grid = f.grid
    if np.isscalar(order):
        order = (int(order),) * grid.dim if grid.dim == 1 else None
        if order is None:
            raise DimensionMismatch("scalar order needs a 1-d grid")
    order = tuple(int(o) for o in np.atleast_1d(order))
    if len(order) != grid.dim or any(o < 0 or o > 4 for o in order):
        raise DimensionMismatch("order components must lie in 0..4")
    if all(o == 0 for o in order):
        return 0.0

    lhs = stft(f, psi).values
    xi = grid.freq_nodes()
    factor = np.ones(grid.size, dtype=complex)
    for axis, o in enumerate(order):
        if o:
            factor = factor * (2j * np.pi * xi[:, axis]) ** o
    lhs = lhs * factor[None, :]

    rhs = np.zeros_like(lhs)
    betas = _multi_range(order)
    for beta in betas:
        coeff = 1
        for o, b in zip(order, beta):
            coeff *= comb(o, b)
        df = spectral_derivative(f, beta) if any(beta) else f
        rem = tuple(o - b for o, b in zip(order, beta))
        dpsi = spectral_derivative(psi, rem) if any(rem) else psi
        rhs += coeff * stft(df, dpsi).values
    return float(np.max(np.abs(lhs - rhs)))


def _multi_range(order: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All multi-indices beta with beta <= order componentwise."""
    out = [()]
    for o in order:
        out = [b + (k,) for b in out for k in range(o + 1)]
    return out
