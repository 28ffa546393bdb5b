"""Canonical solutions and their ratios."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from airy_bands.canonical import (
    ALPHA,
    canonical_arrays,
    canonical_eval,
    canonical_negative_asymptotic,
    canonical_scaled_arrays,
    canonical_trigonometric,
    ratio_derivative_bounds,
    ratio_vpup,
    ratio_vu,
)
from airy_bands.canonical.types import CanonicalPair
from airy_bands.errors import DomainError, PoleError
from airy_bands.zeros import zero_tables


def test_origin():
    """Canonical solutions take their defining values at the origin."""
    pair = canonical_eval(0.0)
    assert (pair.u, pair.up, pair.v, pair.vp) == (1.0, 0.0, 0.0, 1.0)


def test_alpha():
    """Ratio limit is about 1.372."""
    assert ALPHA == pytest.approx(1.372, abs=1e-3)


def test_wronskian():
    """Wronskian `u v' - u' v` is one wherever it is representable."""
    u, up, v, vp = canonical_arrays(np.linspace(-50.0, 3.0, 2001))
    assert np.max(np.abs(u * vp - up * v - 1)) <= 1e-12


def test_wronskian_positive_axis_scaled():
    """Scaled Wronskian vanishes up to the cancelled decaying part for large `x`."""
    x = np.linspace(5.0, 80.0, 101)
    u, up, v, vp, log_scale = canonical_scaled_arrays(x)
    assert_allclose(u * vp - up * v, np.exp(-2 * log_scale), rtol=0, atol=1e-14)


def test_scaled_matches_unscaled():
    """Scaled arrays times `exp(zeta)` reproduce the unscaled values."""
    x = np.linspace(-5.0, 8.0, 131)
    scaled = canonical_scaled_arrays(x)
    growth = np.exp(scaled[-1])
    for value, reference in zip(scaled[:-1], canonical_arrays(x), strict=True):
        assert_allclose(value * growth, reference, rtol=1e-12, atol=1e-12)


def test_trigonometric_form():
    """Rotated Airy forms agree with the direct combinations."""
    x = np.linspace(-20.0, 2.0, 221)
    for value, reference in zip(
        canonical_trigonometric(x), canonical_arrays(x), strict=True
    ):
        assert_allclose(value, reference, rtol=1e-10, atol=1e-12)


def test_negative_asymptotic_form():
    """Auxiliary-pair forms agree with the direct combinations on the negative axis."""
    x = np.linspace(1.5, 40.0, 200)
    for value, reference in zip(
        canonical_negative_asymptotic(x), canonical_arrays(-x), strict=True
    ):
        scale = np.maximum(1.0, np.abs(x) ** 0.25)
        assert np.max(np.abs(value - reference) / scale) <= 1e-11


def test_negative_asymptotic_domain():
    """Auxiliary-pair forms hold on the negative axis only."""
    with pytest.raises(DomainError):
        canonical_negative_asymptotic(np.array([1.0, 0.0]))


@pytest.mark.parametrize("x", [0.0, 1.0, 5.0, 30.0])
def test_ratio_below_alpha(x):
    """`v/u` stays below its limit on the positive axis."""
    assert ratio_vu(x) < ALPHA or ratio_vu(x) == pytest.approx(ALPHA, rel=1e-15)


def test_ratio_limits():
    """Both ratios tend to `ALPHA`."""
    assert ratio_vu(30.0) == pytest.approx(ALPHA, rel=1e-13)
    assert ratio_vpup(30.0) == pytest.approx(ALPHA, rel=1e-13)


def test_ratio_poles():
    """Ratios refuse to evaluate at their poles."""
    tables = zero_tables()
    with pytest.raises(PoleError) as excinfo:
        ratio_vu(-tables.c_tilde[0])
    assert (excinfo.value.family, excinfo.value.index) == ("u", 0)
    with pytest.raises(PoleError) as excinfo:
        ratio_vpup(-tables.c_tilde[1])
    assert (excinfo.value.family, excinfo.value.index) == ("u'", 1)
    with pytest.raises(PoleError):
        ratio_vpup(0.0)


def test_ratio_derivatives():
    """Ratio derivatives on the negative axis are `1/u^2` and `-x/u'^2`."""
    pair = canonical_eval(-1.0)
    assert ratio_derivative_bounds(-1.0) == pytest.approx((1 / pair.u**2, 1 / pair.up**2))
    with pytest.raises(DomainError):
        ratio_derivative_bounds(0.0)


def test_ratio_vu_increasing():
    """`v/u` increases between its poles."""
    tables = zero_tables()
    x = np.linspace(-tables.c_tilde[0] + 1e-3, 0.0, 50)
    values = np.array([ratio_vu(float(xi)) for xi in x])
    assert np.all(np.diff(values) > 0)


def test_pair_rejects_bad_wronskian():
    """Validation rejects a pair whose Wronskian is off."""
    with pytest.raises(ValidationError):
        CanonicalPair(x=0.0, u=1.0, up=0.0, v=0.0, vp=2.0)
