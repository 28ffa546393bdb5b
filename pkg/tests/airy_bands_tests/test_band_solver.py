"""Band edges, counts and densities."""

import numpy as np
import pytest
from pydantic import ValidationError

from airy_bands.band_solver import (
    count_k0,
    count_p0,
    density,
    edge_residuals,
    floor_index,
    gap_bounds,
    psi_ground,
    psi_lower,
    psi_upper,
    small_c_window,
    solve_band_structure,
    to_physical,
    width_and_gap_bounds,
)
from airy_bands.band_solver.types import BandEdge, ScaleParams
from airy_bands.errors import (
    ConversionError,
    DomainError,
    RangeError,
    UnsupportedRangeError,
)
from airy_bands.semiclassics import DENSITY_LIMIT
from airy_bands.zeros import zero_tables


def solve(c: float, max_band: int | None = None):
    return solve_band_structure(ScaleParams.from_c(c), max_band=max_band)


def test_two_bands_at_three():
    """Two bands lie in the potential range at `c = 3`."""
    structure = solve(3.0)
    assert structure.k0 == 1
    assert len(structure.bands) == 2
    assert all(-3 < band.e_min.energy < band.e_max.energy <= 0 for band in structure.bands)


def test_edges_ordered():
    """Edges increase and bands are separated by open gaps."""
    structure = solve(10.0)
    energies = [edge.energy for edge in structure.edges]
    assert energies == sorted(energies)
    assert all(gap > 0 for gap in structure.gaps)
    assert len(structure.bands) == structure.k0 + 1


def test_residuals_small():
    """Every solved edge satisfies its barrier-top equation."""
    structure = solve(7.5)
    residuals = edge_residuals(
        7.5, [e.energy for e in structure.edges], [e.equation for e in structure.edges]
    )
    assert np.max(residuals) < 1e-9


@pytest.mark.parametrize("c", [1.6, 2.5, 4.0, 8.0, 15.0])
def test_first_band_enclosure(c):
    """Band 0 sits between the well bottom and the Ai' zero shift."""
    tables = zero_tables()
    band = solve(c, max_band=0).bands[0]
    assert -c < band.e_min.energy < min(-c / 2, -c + tables.a_tilde[0])
    assert -c + tables.a_tilde[0] < band.e_max.energy < -c + tables.c[0]


@pytest.mark.slow
def test_first_band_enclosure_sweep():
    """Band 0 enclosures hold across well depths."""
    tables = zero_tables()
    at1, c0 = tables.a_tilde[0], tables.c[0]
    for c in np.linspace(0.1, 20.0, 51)[1:].tolist():
        band = solve(c, max_band=0).bands[0]
        assert -c < band.e_min.energy < min(-c / 2, -c + at1)
        if c <= c0:
            assert band.e_max.energy >= 0
        else:
            assert -c + at1 < band.e_max.energy < -c + c0


def test_shallow_well_edges_above_zero():
    """For shallow wells the upper edge of band 0 and the next lower edge lie above zero."""
    structure = solve(1.0)
    band = structure.bands[0]
    following = next(e for e in structure.edges if e.kind == "min" and e.p == 1)
    assert band.e_max.above_range
    assert 0 < band.e_max.energy < following.energy
    assert structure.k0 is None
    assert structure.density is None


@pytest.mark.parametrize("p", range(6))
def test_edges_touch_zero(p):
    """Edges reach zero exactly when the depth is a canonical zero."""
    tables = zero_tables()
    upper = solve(tables.c[p], max_band=p).bands[p].e_max
    assert abs(upper.energy) <= 1e-9
    assert upper.residual <= 1e-9
    structure = solve(tables.c_tilde[p], max_band=p)
    lower = next(e for e in structure.edges if e.kind == "min" and e.p == p + 1)
    assert abs(lower.energy) <= 1e-9
    assert lower.residual <= 1e-9


def test_unsupported_range():
    """Edges of higher bands above the range are refused."""
    with pytest.raises(UnsupportedRangeError):
        solve(1.7, max_band=2)


def test_counts():
    """Band counts follow the canonical zeros and their leading estimate."""
    tables = zero_tables()
    assert count_k0(tables.c[4] + 1e-6) == 4
    assert count_k0(tables.c[4] - 1e-6) == 3
    for c in (10.0, 30.0, 100.0):
        assert floor_index(c) - 1 <= count_k0(c) <= floor_index(c)
    with pytest.raises(DomainError):
        count_k0(1.0)


def test_p0():
    """Small-depth index counts consecutive `c~` gaps at least `c`."""
    tables = zero_tables()
    steps = np.diff(tables.c_tilde)
    assert count_p0(0.9 * tables.c[0]) == int(np.count_nonzero(steps >= 0.9 * tables.c[0]))
    with pytest.raises(DomainError):
        count_p0(2.0)


@pytest.mark.parametrize("c", [1.2, 0.5, 0.3])
def test_small_c_window(c):
    """Upper edge of band 0 lies in its small-depth window."""
    lo, hi = small_c_window(c)
    energy = solve(c, max_band=0).bands[0].e_max.energy
    assert lo <= energy <= hi


def test_small_c_window_domain():
    """The window applies up to `c_0` only."""
    with pytest.raises(DomainError):
        small_c_window(2.0)


def test_psi_functions():
    """Inverse ratio solutions start at the canonical zeros."""
    tables = zero_tables()
    assert psi_lower(3, 0.0) == -tables.c[3]
    assert psi_upper(2, 0.0) == -tables.c_tilde[2]
    assert -tables.a_tilde[0] < psi_ground(1.0) < 0
    assert psi_lower(2, 1.0) > -tables.c[2]
    with pytest.raises(DomainError):
        psi_ground(0.0)


@pytest.mark.parametrize("c", [3.0, 6.0, 10.0])
def test_edge_localization(c):
    """Edges of bands `p >= 1` sit in their zero intervals."""
    tables = zero_tables()
    tol = 1e-12 * c
    for band in solve(c).bands[1:]:
        p, shift = band.p, tables.frak_a[band.p] - c
        assert tables.c_tilde[p - 1] - c - tol <= band.e_min.energy <= shift + tol
        assert shift - tol <= band.e_max.energy <= tables.c[p] - c + tol


@pytest.mark.parametrize("p", range(4))
def test_upper_edges_fall_with_depth(p):
    """Upper edges decrease as the well deepens."""
    depths = [6.0, 8.0, 10.0, 12.0]
    energies = [solve(c, max_band=p).bands[p].e_max.energy for c in depths]
    assert np.all(np.diff(energies) < 0)


@pytest.mark.parametrize("c", [100.0, 150.0])
def test_widths_below_zero_spacing(c):
    """Widths never exceed the spacing of their zero intervals and the density stays bounded."""
    tables = zero_tables(1000)
    structure = solve(c)
    assert structure.bands[0].width <= tables.c[0]
    for band in structure.bands[1:]:
        assert 0 <= band.width <= tables.c_tilde[band.p] - tables.c_tilde[band.p - 1]
    assert structure.density is not None
    assert 0 < structure.density <= DENSITY_LIMIT + 0.02


def test_collapsed_band_keeps_resolved_scale():
    """Collapsed bands only take estimates below the collapse scale."""
    structure = solve(100.0, max_band=5)
    for band in structure.bands:
        assert band.collapsed_at_precision
        assert 0 <= band.width < 1e-14 * 100.0


def test_odd_upper_edges_at_three():
    """The upper edge of band 1 solves its equation at `c = 3`."""
    tables = zero_tables()
    band = solve(3.0).bands[1]
    assert tables.a[0] - 3.0 < band.e_max.energy <= tables.c[1] - 3.0
    assert band.e_max.residual < 1e-9

def test_collapsed_band_width():
    """Bands narrower than edge resolution report their estimated width."""
    band = solve(30.0, max_band=0).bands[0]
    assert band.collapsed_at_precision
    assert 0 < band.width < 1e-12


@pytest.mark.slow
def test_width_and_gap_bounds():
    """Explicit bounds hold for every band inside the range."""
    structure = solve(50.0)
    for p in range(2, structure.k0 + 1):
        report = width_and_gap_bounds(p, structure)
        assert report.width_ok
        assert report.gap_ok in {True, None}


def test_bounds_tolerate_round_off():
    """Gaps that meet their zero spacing up to round-off pass the bound checks."""
    structure = solve(50.0)
    for p in (7, 11, 12, 20, 24, 28, 29):
        report = width_and_gap_bounds(p, structure)
        assert report.width_ok
        assert report.gap_ok


def test_width_bounds_range():
    """Width bounds start at band 2."""
    with pytest.raises(RangeError):
        width_and_gap_bounds(1, solve(10.0))


def test_gap_bounds_ordered():
    """Lower gap bound stays below the upper one."""
    for p in range(2, 50):
        lower, upper = gap_bounds(p)
        assert 0 < lower < upper


@pytest.mark.slow
def test_density_trend():
    """Density increases with depth and stays below its limit."""
    values = [density(c) for c in (10.0, 30.0, 100.0)]
    assert values == sorted(values)
    assert 0 < values[-1] <= DENSITY_LIMIT + 0.02


def test_density_domain():
    """Density needs a band inside the range."""
    with pytest.raises(DomainError):
        density(1.0)


def test_physical_units():
    """Physical energies are rescaled energies divided by `theta`."""
    params = ScaleParams.from_physical(hbar=1.0, m=0.5, v0=27.0, l0=1.0)
    assert params.c == pytest.approx(3.0)
    structure = solve_band_structure(params)
    physical = to_physical(structure)
    assert physical[0].e_min == pytest.approx(structure.bands[0].e_min.energy / params.theta)
    with pytest.raises(ConversionError):
        to_physical(solve(3.0))


def test_inconsistent_scale():
    """Scale parameters must satisfy `c = h^(-2/3)`."""
    with pytest.raises(ValidationError):
        ScaleParams(h=1.0, c=2.0, theta=2.0)


def test_edge_rejects_large_residual():
    """Validation rejects edges that do not solve their equation."""
    with pytest.raises(ValidationError):
        BandEdge(
            p=0, kind="min", energy=-1.0, equation="U_prime", bracket=(-2.0, 0.0), residual=1e-3
        )
