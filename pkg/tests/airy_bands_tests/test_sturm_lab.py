"""Zero curves and comparison identities."""

import numpy as np
import pytest

from airy_bands.band_solver import psi_lower
from airy_bands.errors import DomainError, PreconditionError
from airy_bands.sturm_lab import (
    f_g_eval,
    f_solution,
    g_solution,
    sign_pattern,
    sturm_identity_check,
    sturm_picone_check,
    sturm_probe,
    z_curve,
)
from airy_bands.zeros import zero_tables

K_MAX = 6


@pytest.mark.parametrize("x", [0.0, 0.7, 3.0])
def test_values_at_origin(x):
    """`f_x(0) = 1` and `g_x(0) = 0`."""
    f, g = f_g_eval(x, 0.0)
    assert f == pytest.approx(1, abs=1e-13)
    assert g == pytest.approx(0, abs=1e-13)


@pytest.mark.parametrize("k", range(K_MAX + 1))
def test_curves_start_at_zeros(k):
    """Zero curves start at the canonical zeros."""
    assert z_curve(k, 0.0) == pytest.approx(zero_tables().c[k], abs=1e-10)


def test_curves_increase():
    """Zero curves increase with `x`."""
    grid = np.arange(0.0, 5.01, 0.25).tolist()
    for k in range(K_MAX + 1):
        assert np.all(np.diff([z_curve(k, x) for x in grid]) > 0)


@pytest.mark.parametrize("k", range(K_MAX + 1))
def test_curves_match_ratio_solutions(k):
    """`z_k(x) = x - psi_k(x)`."""
    assert z_curve(k, 2.0) == pytest.approx(2.0 - psi_lower(k, 2.0), abs=1e-10)


def test_probe():
    """Zeros vanish and derivative relations hold."""
    probe = sturm_probe(1.0, K_MAX)
    assert max(probe.residuals) < 1e-12
    assert probe.derivative_residual < 1e-7


def test_wronskian_identity():
    """Wronskian identity holds for `g_1` and `g_2`."""
    report = sturm_identity_check(
        lambda s: 2.0 - s,
        lambda s: 1.0 - s,
        g_solution(1.0),
        g_solution(2.0),
        (z_curve(1, 2.0), z_curve(3, 2.0)),
    )
    assert report.residual < 1e-6
    assert report.agreement < 1e-6


def test_picone_identity():
    """Picone identity holds for `f_1` and `f_2`."""
    report = sturm_picone_check(
        lambda s: 1 / (1.0 - s),
        lambda s: 1 / (2.0 - s),
        np.ones_like,
        f_solution(2.0),
        f_solution(1.0),
        (-2.0, 0.75),
    )
    assert report.residual < 1e-6
    assert report.equation_residual < 1e-6
    assert report.rhs_nonnegative
    assert report.dominance is not None
    assert report.dominance > 0


def test_picone_preconditions():
    """Picone identity refuses unordered coefficients and vanishing `y`."""
    q = lambda s: 1 / (2.0 - s)  # noqa: E731
    with pytest.raises(PreconditionError):
        sturm_picone_check(q, q, np.ones_like, f_solution(2.0), f_solution(2.0), (-1.0, 0.5))
    report = sturm_picone_check(
        q, q, np.ones_like, f_solution(2.0), f_solution(2.0), (-1.0, 0.5), strict=False
    )
    assert report.dominance is None
    with pytest.raises(PreconditionError):
        sturm_picone_check(
            lambda s: 1 + 1 / (1.0 - s),
            lambda s: 1 / (1.0 - s),
            np.ones_like,
            g_solution(1.0),
            f_solution(1.0),
            (-1.0, 0.5),
        )


@pytest.mark.parametrize("x", [0.0, 1.0, 2.5])
def test_sign_pattern(x):
    """Signs of `f`, `f'`, `g`, `g'` alternate consistently between zeros."""
    report = sign_pattern(x, K_MAX)
    assert report.consistent
    assert all(interval.ok for interval in report.intervals)


def test_domain():
    """Negative `x` and `k` are rejected."""
    with pytest.raises(DomainError):
        f_g_eval(-1.0, 0.0)
    with pytest.raises(DomainError):
        z_curve(-1, 1.0)
