"""Semiclassical estimates."""

from math import log

import pytest

from airy_bands.band_solver import solve_band_structure
from airy_bands.band_solver.types import ScaleParams
from airy_bands.errors import DomainError, ValidityError
from airy_bands.semiclassics import (
    density_bound_terms,
    estimate_edge,
    estimate_gap,
    estimate_width,
    large_h_residual,
    residual_ratio,
)


def band_zero(h: float):
    return solve_band_structure(ScaleParams.from_h(h), max_band=0).bands[0]


@pytest.mark.parametrize("h", [0.5, 0.35, 0.25])
def test_lower_edge_ratio(h):
    """Solved lower edge of band 0 follows its tunneling correction."""
    ratio = residual_ratio(estimate_edge(0, "min", h), band_zero(h).e_min.energy)
    assert ratio is not None
    assert 0.3 <= ratio <= 3


@pytest.mark.parametrize("h", [0.5, 0.35, 0.25])
def test_width_ratio(h):
    """Solved width of band 0 follows its tunneling correction."""
    ratio = residual_ratio(estimate_width(0, h), band_zero(h).width)
    assert ratio is not None
    assert 0.3 <= ratio <= 3


@pytest.mark.parametrize("h", [0.1, 0.08])
def test_gap_ratio(h):
    """Solved first gap follows its tunneling correction with the full barrier action."""
    gap = band_zero(h).gap_after
    assert gap is not None
    ratio = residual_ratio(estimate_gap(0, h, refined=True), gap)
    assert ratio is not None
    assert 0.3 <= ratio <= 3


def test_gap_ratio_trend():
    """Gap ratio deviation shrinks from `h = 0.1` to `h = 0.08`."""
    deviations = [
        abs(ratio(estimate_gap(0, h, refined=True), band_zero(h).gap_after) - 1)
        for h in (0.1, 0.08)
    ]
    assert deviations[1] <= max(1.5 * deviations[0], 0.05)


def test_refined_action_matches_leading_exponent():
    """Full and leading barrier actions differ by terms that vanish with `h`."""
    gaps = [
        log(estimate_gap(0, h, refined=True).correction / estimate_gap(0, h).correction)
        for h in (0.1, 0.01)
    ]
    assert gaps[0] < 0
    assert abs(gaps[1]) < abs(gaps[0]) / 2


def ratio(estimate, value: float) -> float:
    result = residual_ratio(estimate, value)
    assert result is not None
    return result


def test_ratio_deviation_trend():
    """Ratio deviations do not grow as `h` decreases."""
    big, small = band_zero(0.5), band_zero(0.25)
    start = abs(ratio(estimate_edge(0, "min", 0.5), big.e_min.energy) - 1)
    end = abs(ratio(estimate_edge(0, "min", 0.25), small.e_min.energy) - 1)
    assert end <= max(1.5 * start, 0.05)
    start = abs(ratio(estimate_width(0, 0.5), big.width) - 1)
    end = abs(ratio(estimate_width(0, 0.25), small.width) - 1)
    assert end <= max(1.5 * start, 0.05)


def test_signs():
    """Lower edges lie below the well eigenvalue, upper edges above."""
    assert estimate_edge(0, "min", 0.3).value < estimate_edge(0, "min", 0.3).leading
    assert estimate_edge(0, "max", 0.3).value > estimate_edge(0, "max", 0.3).leading
    width = estimate_width(0, 0.3)
    assert width.value == pytest.approx(2 * abs(estimate_edge(0, "min", 0.3).correction))


def test_validity():
    """Estimates refuse parameters outside their validity intervals."""
    with pytest.raises(ValidityError) as excinfo:
        estimate_gap(0, 0.5)
    assert excinfo.value.bound == pytest.approx(0.278, abs=1e-3)
    with pytest.raises(ValidityError):
        estimate_width(0, 1.0)
    with pytest.raises(DomainError):
        estimate_edge(-1, "min", 0.3)


def test_below_resolution():
    """Corrections below edge resolution are flagged and give no ratio."""
    estimate = estimate_width(0, 0.01)
    assert estimate.below_solver_resolution
    assert residual_ratio(estimate, 0.0) is None


def test_large_h_expansion():
    """Bottom edge follows its large-`h` expansion with a residual of order `o(h^-4)`."""
    r10 = abs(large_h_residual(10.0, band_zero(10.0).e_min.energy))
    r20 = abs(large_h_residual(20.0, band_zero(20.0).e_min.energy))
    assert r10 / r20 >= 8
    assert band_zero(100.0).e_max.energy > band_zero(10.0).e_max.energy


def test_width_bound():
    """Width bound decreases with the band index and starts at band 2."""
    assert density_bound_terms(3) < density_bound_terms(2)
    with pytest.raises(DomainError):
        density_bound_terms(1)
