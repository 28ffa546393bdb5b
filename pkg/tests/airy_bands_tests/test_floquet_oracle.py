"""Floquet discriminant oracle."""

import numpy as np
import pytest

from airy_bands.band_solver import solve_band_structure
from airy_bands.band_solver.types import ScaleParams
from airy_bands.errors import BracketError, DomainError
from airy_bands.floquet_oracle import (
    FACTORS,
    monodromy,
    oracle_band_edges,
    oracle_edge,
    propagate_period,
    scan_discriminant,
)
from airy_bands.settings import Settings


def test_determinant():
    """Monodromy matrices have unit determinant."""
    result = monodromy(3.0, -1.0)
    assert result.determinant == pytest.approx(1, abs=1e-7)
    assert result.discriminant == pytest.approx(np.trace(np.asarray(result.matrix)))
    assert result.step_count > 0


def test_trace_independent_of_start():
    """Direct integration from any point gives the same discriminant."""
    direct = propagate_period(3.0, -1.0, start=0.3)
    assert np.trace(direct) == pytest.approx(monodromy(3.0, -1.0).discriminant, rel=1e-7)
    assert np.linalg.det(direct) == pytest.approx(1, abs=1e-7)


def test_discriminant_at_solver_edges():
    """The discriminant is plus or minus two at solved edges."""
    structure = solve_band_structure(ScaleParams.from_c(3.0))
    for edge in structure.edges:
        if edge.energy > 0:
            continue
        delta = monodromy(3.0, edge.energy, tol=1e-12).discriminant
        assert delta == pytest.approx(FACTORS[edge.equation][1], abs=1e-5)


def test_scan():
    """Scans sample an increasing grid and bracket every crossing."""
    scan = scan_discriminant(2.0, (-2.0, 0.0), n=200)
    assert np.all(np.diff(scan.grid) > 0)
    assert len(scan.values) == 200
    assert all(b.hi - b.lo <= 2e-9 for b in scan.edge_brackets)


@pytest.mark.parametrize(
    "c", [2.0, 3.0, pytest.param(5.0, marks=pytest.mark.slow), pytest.param(10.0, marks=pytest.mark.slow)]
)
def test_oracle_matches_solver(c):
    """Oracle and solver agree on every edge in the potential range."""
    structure = solve_band_structure(ScaleParams.from_c(c))
    solver = sorted(e.energy for e in structure.edges if -c <= e.energy <= 0)
    oracle = oracle_band_edges(c, (-c, 0.0), tol=1e-10)
    expanded = sorted(
        energy for e in oracle for energy in ([e.energy] * (2 if e.degenerate else 1))
    )
    assert len(expanded) == len(solver)
    assert np.max(np.abs(np.array(expanded) - np.array(solver))) <= 1e-7
    assert len(expanded) // 2 == structure.k0 + 1  # pyright: ignore[reportOptionalOperand]


def test_no_edge_in_bracket():
    """Refinement fails without a sign change."""
    with pytest.raises(BracketError):
        oracle_edge(3.0, (-2.9, -2.8), 2)


@pytest.mark.parametrize(
    ("c", "n", "tol"), [(100.0, 400, 1e-10), (2.0, 8, 1e-10), (2.0, 400, 1e-3)]
)
def test_domain(c, n, tol):
    """Deep wells, coarse scans and loose tolerances are rejected."""
    with pytest.raises(DomainError):
        scan_discriminant(c, (-c, 0.0), n=n, tol=tol)


@pytest.mark.parametrize(("method", "order"), [("RK45", 5), ("DOP853", 8)])
def test_convergence_order(monkeypatch, method, order):
    """Steps grow like `tol^(-1/order)` and the discriminant converges as `tol` shrinks."""
    reference = monodromy(3.0, -1.0, tol=1e-13).discriminant
    monkeypatch.setattr(
        "airy_bands.floquet_oracle.get_settings", lambda: Settings(oracle_method=method)
    )
    loose, tight = monodromy(3.0, -1.0, tol=1e-6), monodromy(3.0, -1.0, tol=1e-9)
    expected = 1e3 ** (1 / order)
    assert expected / 4 <= tight.step_count / loose.step_count <= 4 * expected
    drift = [abs(m.discriminant - reference) / max(abs(reference), 2.0) for m in (loose, tight)]
    assert drift[1] <= drift[0] <= 1e-3
    assert drift[1] <= 1e-6
