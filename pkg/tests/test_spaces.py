import math

import numpy as np
import pytest

from gaborgrid.errors import (
    DimensionMismatch,
    NonAlignedLattice,
    NotSolid,
    OverlappingSupports,
)
from gaborgrid.grid import (
    CoeffArray,
    GridLattice,
    GridSignal,
    PeriodicGrid,
    modulate,
    sample_bump,
    sample_gaussian,
    translate,
)
from gaborgrid.lattice import PowerWeight
from gaborgrid.spaces import (
    DiscreteNormRequest,
    SpaceSpec,
    continuous_norm,
    decay_weighted_sup,
    discrete_norm,
    fourier_side_norm,
    growth_weighted_sup,
    solid_discrete_norm,
)

from conftest import random_signal


def lp(p):
    return SpaceSpec("Lp_w", p)


def lp_w(p, tau):
    return SpaceSpec("Lp_w", p, weight=PowerWeight(tau))


def test_zero_signal_norm(ref_grid):
    z = GridSignal(ref_grid, np.zeros(ref_grid.size))
    for spec in (lp(1), lp(2), SpaceSpec("C0_w"), SpaceSpec("FourierLp_w", 2)):
        assert continuous_norm(z, spec) == 0.0


def test_l1_delta_column(ref_grid):
    vals = np.zeros(ref_grid.size)
    vals[37] = 4.0
    f = GridSignal(ref_grid, vals)
    assert continuous_norm(f, lp(1)) == pytest.approx(4.0 * ref_grid.spacing)


def test_l2_matches_direct_and_parseval(ref_grid, rng):
    f = random_signal(ref_grid, rng)
    direct = np.sqrt(ref_grid.spacing * np.sum(np.abs(f.values) ** 2))
    assert continuous_norm(f, lp(2)) == pytest.approx(direct, rel=1e-12)
    assert continuous_norm(f, SpaceSpec("FourierLp_w", 2)) == pytest.approx(
        direct, rel=1e-10
    )


def test_linf_and_c0(ref_grid, rng):
    f = random_signal(ref_grid, rng)
    assert continuous_norm(f, lp(math.inf)) == pytest.approx(np.max(np.abs(f.values)))
    assert continuous_norm(f, SpaceSpec("C0_w")) == pytest.approx(
        np.max(np.abs(f.values))
    )


def test_weighted_norm_uses_centered_nodes(ref_grid):
    vals = np.zeros(ref_grid.size)
    vals[-1] = 1.0  # node at period - spacing, centered representative -spacing
    f = GridSignal(ref_grid, vals)
    expected = (1.0 + ref_grid.spacing) ** 2
    assert continuous_norm(f, lp_w(math.inf, 2.0)) == pytest.approx(expected)


def test_mixed_norm_oracle():
    grid = PeriodicGrid(2, 4.0, 8)
    rng = np.random.default_rng(9)
    f = random_signal(grid, rng)
    spec = SpaceSpec("MixedLp", 1.0, 3.0)
    table = np.abs(f.values).reshape(8, 8)
    inner = (grid.spacing * np.sum(table ** 3.0, axis=1)) ** (1 / 3.0)
    expected = grid.spacing * np.sum(inner)
    assert continuous_norm(f, spec) == pytest.approx(expected, rel=1e-12)


def test_mixed_norm_needs_2d(ref_grid, rng):
    with pytest.raises(DimensionMismatch):
        continuous_norm(random_signal(ref_grid, rng), SpaceSpec("MixedLp", 1.0, 2.0))


def test_modulation_isometry_solid(ref_grid, rng):
    f = random_signal(ref_grid, rng)
    for spec in (lp(1), lp_w(2, 1.5), lp(4), SpaceSpec("C0_w")):
        before = continuous_norm(f, spec)
        after = continuous_norm(modulate(f, 3.0 / ref_grid.period), spec)
        assert after == pytest.approx(before, rel=1e-12)


@pytest.mark.parametrize("tau", [0.0, 1.5, -2.0])
def test_translation_bound(ref_grid, rng, tau):
    f = random_signal(ref_grid, rng)
    spec = lp_w(2, tau)
    base = continuous_norm(f, spec)
    for steps in (1, 37, 128, 255):
        x = steps * ref_grid.spacing
        circ = min(x % ref_grid.period, ref_grid.period - x % ref_grid.period)
        bound = (1.0 + circ) ** abs(tau) * base * (1 + 1e-12)
        assert continuous_norm(translate(f, x), spec) <= bound


def test_solidity_monotone(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    small = rng.standard_normal(lat.count)
    big = small * rng.uniform(1.0, 3.0, lat.count)
    cs = CoeffArray.over_lattice(lat, small)
    cb = CoeffArray.over_lattice(lat, big)
    for spec in (lp(1), lp_w(2, 2.0), lp(math.inf)):
        assert solid_discrete_norm(cs, spec) <= solid_discrete_norm(cb, spec) * (1 + 1e-12)


@pytest.fixture
def bump_setup(ref_grid):
    lat = GridLattice.cubic(ref_grid, 1.0)
    chi = sample_bump(ref_grid, center=0.0, radius=0.45)
    return lat, chi


def test_discrete_norm_zero(bump_setup):
    lat, chi = bump_setup
    c = CoeffArray.over_lattice(lat, np.zeros(lat.count))
    assert discrete_norm(DiscreteNormRequest(lp(2), lat, chi, c)) == 0.0


def test_discrete_norm_delta_is_window_norm(bump_setup):
    lat, chi = bump_setup
    vals = np.zeros(lat.count, dtype=complex)
    vals[5] = 1.0
    c = CoeffArray.over_lattice(lat, vals)
    for p in (1.0, 2.0, math.inf):
        got = discrete_norm(DiscreteNormRequest(lp(p), lat, chi, c))
        assert got == pytest.approx(continuous_norm(chi, lp(p)), rel=1e-12)


def test_discrete_norm_disjoint_decomposition_oracle(bump_setup, rng):
    lat, chi = bump_setup
    c = CoeffArray.over_lattice(
        lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
    )
    spec = lp_w(3.0, 1.0)
    got = discrete_norm(DiscreteNormRequest(spec, lat, chi, c))
    # By disjoint supports the norm decomposes into per-site weighted window norms.
    total = 0.0
    for coeff, lam in zip(c.values, lat.points):
        shifted = translate(chi, lam[0])
        total += abs(coeff) ** 3 * continuous_norm(shifted, spec) ** 3
    assert got == pytest.approx(total ** (1 / 3.0), rel=1e-12)


def test_discrete_norm_rejects_overlap(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    wide = sample_bump(ref_grid, center=0.0, radius=0.9)
    c = CoeffArray.over_lattice(lat, rng.standard_normal(lat.count))
    with pytest.raises(OverlappingSupports):
        discrete_norm(DiscreteNormRequest(lp(2), lat, wide, c))
    gauss = sample_gaussian(ref_grid)
    with pytest.raises(OverlappingSupports):
        discrete_norm(DiscreteNormRequest(lp(2), lat, gauss, c))


def test_solid_shortcut_exact_factor_unweighted(bump_setup, rng):
    lat, chi = bump_setup
    c = CoeffArray.over_lattice(
        lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
    )
    for p in (1.0, 2.0, 4.0, math.inf):
        spec = lp(p)
        direct = discrete_norm(DiscreteNormRequest(spec, lat, chi, c))
        factor = continuous_norm(chi, spec)
        assert direct == pytest.approx(factor * solid_discrete_norm(c, spec), rel=1e-12)


def test_solid_norm_examples(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    vals = np.zeros(lat.count, dtype=complex)
    vals[3] = 1.0  # lattice point at 3.0
    c = CoeffArray.over_lattice(lat, vals)
    spec = lp_w(math.inf, 2.0)
    assert solid_discrete_norm(c, spec) == pytest.approx((1.0 + 3.0) ** 2)
    c16 = CoeffArray.over_lattice(lat, rng.standard_normal(lat.count))
    assert solid_discrete_norm(c16, lp(2)) == pytest.approx(
        np.linalg.norm(c16.values), rel=1e-13
    )


def test_solid_norm_rejects_fourier(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    c = CoeffArray.over_lattice(lat, rng.standard_normal(lat.count))
    with pytest.raises(NotSolid):
        solid_discrete_norm(c, SpaceSpec("FourierLp_w", 2))


def test_solid_mixed_norm_oracle():
    grid = PeriodicGrid(2, 4.0, 8)
    rng = np.random.default_rng(3)
    lat = GridLattice.cubic(grid, 1.0)
    c = CoeffArray.over_lattice(lat, rng.standard_normal(lat.count))
    spec = SpaceSpec("MixedLp", 1.0, 2.0)
    table = np.abs(c.values).reshape(4, 4)
    expected = np.sum(np.sqrt(np.sum(table ** 2, axis=1)))
    assert solid_discrete_norm(c, spec) == pytest.approx(expected, rel=1e-12)


def test_window_independence_ratio_band(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    chi1 = sample_bump(ref_grid, radius=0.3)
    chi2 = sample_bump(ref_grid, radius=0.45)
    spec = lp_w(2.0, 2.0)
    ratios = []
    for _ in range(50):
        c = CoeffArray.over_lattice(
            lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
        )
        n1 = discrete_norm(DiscreteNormRequest(spec, lat, chi1, c))
        n2 = discrete_norm(DiscreteNormRequest(spec, lat, chi2, c))
        ratios.append(n1 / n2)
    K = max(max(ratios), 1.0 / min(ratios))
    assert np.isfinite(K) and K >= 1.0


# Fourier-side norms -------------------------------------------------------

def test_fourier_side_constant_series(ref_grid):
    lat = GridLattice.cubic(ref_grid, 1.0)  # dual lattice is Z as well
    vals = np.zeros(lat.count, dtype=complex)
    vals[0] = 1.0
    c = CoeffArray.over_lattice(lat, vals)
    got = fourier_side_norm(c, SpaceSpec("FourierLp_w", 1.0))
    assert got == pytest.approx(1.0, rel=1e-12)  # vol(dual) = 1


def test_fourier_side_hermitian_pair_real(ref_grid):
    lat = GridLattice.cubic(ref_grid, 1.0)
    vals = np.zeros(lat.count, dtype=complex)
    vals[1] = 0.5 - 0.25j   # frequency +1
    vals[-1] = 0.5 + 0.25j  # frequency -1 (centered representative)
    c = CoeffArray.over_lattice(lat, vals)
    # Rebuild the series directly and check it is real on the nodes.
    x = ref_grid.axis_nodes()
    series = vals[1] * np.exp(2j * np.pi * x) + vals[-1] * np.exp(-2j * np.pi * x)
    assert np.max(np.abs(series.imag)) < 1e-12
    assert fourier_side_norm(c, SpaceSpec("FourierLp_w", 2.0)) > 0


@pytest.mark.parametrize("step", [1.0, 2.0])
def test_fourier_side_parseval(ref_grid, rng, step):
    lat = GridLattice.cubic(ref_grid, step)
    c = CoeffArray.over_lattice(
        lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
    )
    got = fourier_side_norm(c, SpaceSpec("FourierLp_w", 2.0))
    vol_dual = 1.0 / step
    assert got == pytest.approx(
        np.sqrt(vol_dual) * np.linalg.norm(c.values), rel=1e-10
    )


def test_fourier_side_rejects_non_frequency_lattice():
    grid = PeriodicGrid(1, 10.0, 100)  # spacing 0.1, 1/P = 0.1, but pts*P not int
    lat = GridLattice.cubic(grid, 0.3)
    c = CoeffArray.over_lattice(lat, np.zeros(lat.count))
    with pytest.raises(NonAlignedLattice):
        fourier_side_norm(c, SpaceSpec("FourierLp_w", 2.0))


# Weighted sup scales ------------------------------------------------------

def test_weighted_sup_delta_at_origin(ref_grid):
    lat = GridLattice.cubic(ref_grid, 1.0)
    vals = np.zeros(lat.count, dtype=complex)
    vals[0] = 1.0
    c = CoeffArray.over_lattice(lat, vals)
    for order in range(5):
        assert decay_weighted_sup(c, order) == pytest.approx(1.0)
        assert growth_weighted_sup(c, order) == pytest.approx(1.0)


def test_weighted_sup_matched_decay(ref_grid):
    lat = GridLattice.cubic(ref_grid, 1.0)
    r = np.linalg.norm(lat.centered_points, axis=-1)
    c = CoeffArray.over_lattice(lat, (1.0 + r) ** -3.0)
    assert decay_weighted_sup(c, 3) == pytest.approx(1.0, rel=1e-12)


def test_weighted_sup_nested_composition(ref_grid, rng):
    time_lat = GridLattice.cubic(ref_grid, 1.0)
    freq_lat = GridLattice.cubic(ref_grid.reciprocal(), 0.5)
    nested = rng.standard_normal((freq_lat.count, time_lat.count)) + 1j * rng.standard_normal(
        (freq_lat.count, time_lat.count)
    )
    c = CoeffArray.over_lattice(freq_lat, nested)
    spec = lp_w(2.0, 1.0)
    norm_of_row = lambda row: solid_discrete_norm(
        CoeffArray.over_lattice(time_lat, row), spec
    )
    got = decay_weighted_sup(c, 2, value_norm=norm_of_row)
    w = (1.0 + np.linalg.norm(freq_lat.centered_points, axis=-1)) ** 2
    expected = max(
        w[j] * norm_of_row(nested[j]) for j in range(freq_lat.count)
    )
    assert got == pytest.approx(expected, rel=1e-12)


def test_embedding_chain_two_sided(ref_grid, rng):
    lat = GridLattice.cubic(ref_grid, 1.0)
    spec = lp(2)
    k1, k2 = np.inf, np.inf
    for _ in range(50):
        c = CoeffArray.over_lattice(
            lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
        )
        d = solid_discrete_norm(c, spec)
        k1 = min(k1, decay_weighted_sup(c, 3) / d)
        k2 = min(k2, d / growth_weighted_sup(c, 3))
    assert k1 > 0 and k2 > 0


def test_space_spec_round_trip():
    spec = SpaceSpec("MixedLp", 1.0, 2.0, PowerWeight(1.5))
    again = SpaceSpec.from_dict(spec.to_dict())
    assert again == spec
    inf_spec = SpaceSpec.from_dict({"kind": "Lp_w", "p": "inf", "tau": 0.0})
    assert math.isinf(inf_spec.p)
    with pytest.raises(ValueError):
        SpaceSpec.from_dict({"kind": "nope"})
    with pytest.raises(ValueError):
        SpaceSpec("Lp_w", 0.5)


def test_fourier_side_norm_two_dimensional():
    grid = PeriodicGrid(2, 4.0, 16)  # self-reciprocal: spacing = 1/period
    lat = GridLattice.cubic(grid, 1.0)
    rng = np.random.default_rng(5)
    c = CoeffArray.over_lattice(
        lat, rng.standard_normal(lat.count) + 1j * rng.standard_normal(lat.count)
    )
    got = fourier_side_norm(c, SpaceSpec("FourierLp_w", 2.0))
    assert got == pytest.approx(np.linalg.norm(c.values), rel=1e-10)
