"""Canonical solutions of `y'' = x y` normalized at the origin, and their ratios."""

from __future__ import annotations

from math import isfinite, pi, sqrt

import numpy as np

from airy_bands.airy_core import (
    AI0,
    AIP0,
    BI0,
    BIP0,
    airy_arrays,
    airy_scaled,
    aux_pq_arrays,
    check_finite,
    maclaurin_basis,
    zeta,
)
from airy_bands.canonical.types import CanonicalPair
from airy_bands.errors import DomainError, PoleError
from airy_bands.settings import get_settings
from airy_bands.types import Array, ArrayLike

ALPHA = -AI0 / AIP0
"""Common limit of `v/u` and `v'/u'` at infinity, about 1.372."""
SERIES_RANGE = 1.0
"""Half-width of the interval where `u`, `v` come from the Maclaurin basis."""


def canonical_arrays(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """Vectorized `u, u', v, v'`."""
    x = check_finite(x)
    ai, aip, bi, bip = airy_arrays(x)
    u = pi * (BIP0 * ai - AIP0 * bi)
    up = pi * (BIP0 * aip - AIP0 * bip)
    v = pi * (AI0 * bi - BI0 * ai)
    vp = pi * (AI0 * bip - BI0 * aip)
    near = np.abs(x) <= SERIES_RANGE
    if np.any(near):
        f, fp, g, gp = maclaurin_basis(np.where(near, x, 0.0))
        u, up = np.where(near, f, u), np.where(near, fp, up)
        v, vp = np.where(near, g, v), np.where(near, gp, vp)
    return u, up, v, vp


def canonical_scaled_arrays(x: ArrayLike) -> tuple[Array, Array, Array, Array, Array]:
    """Vectorized `u, u', v, v'` times `exp(-zeta)` on the positive axis.

    Returns the scaled values followed by the exponent `zeta`, zero where `x <= 0`.
    """
    x = check_finite(x)
    positive = x > 0
    log_scale = np.where(positive, zeta(x), 0.0)
    u, up, v, vp = canonical_arrays(np.where(positive, 0.0, x))
    if not np.any(positive):
        return u, up, v, vp, log_scale
    xp = np.where(positive, x, 1.0)
    eai, eaip, ebi, ebip = airy_scaled(xp)
    w = np.exp(-2 * zeta(xp))
    us = pi * (BIP0 * eai * w - AIP0 * ebi)
    ups = pi * (BIP0 * eaip * w - AIP0 * ebip)
    vs = pi * (AI0 * ebi - BI0 * eai * w)
    vps = pi * (AI0 * ebip - BI0 * eaip * w)
    near = positive & (x <= SERIES_RANGE)
    if np.any(near):
        f, fp, g, gp = maclaurin_basis(np.where(near, x, 0.0))
        decay = np.exp(-log_scale)
        us, ups = np.where(near, f * decay, us), np.where(near, fp * decay, ups)
        vs, vps = np.where(near, g * decay, vs), np.where(near, gp * decay, vps)
    return (
        np.where(positive, us, u),
        np.where(positive, ups, up),
        np.where(positive, vs, v),
        np.where(positive, vps, vp),
        log_scale,
    )


def ratio_vu_array(x: ArrayLike) -> Array:
    """Vectorized `v/u`, infinite at zeros of `u`."""
    u, _, v, _, _ = canonical_scaled_arrays(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        return v / u


def ratio_vpup_array(x: ArrayLike) -> Array:
    """Vectorized `v'/u'`, infinite at zeros of `u'`."""
    _, up, _, vp, _ = canonical_scaled_arrays(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        return vp / up


def canonical_eval(x: float) -> CanonicalPair:
    """Evaluate `u, u', v, v'` at `x`, exactly `(1, 0, 0, 1)` at the origin.

    Raises
    ------
    DomainError
        If `x` is not finite.
    """
    if not isfinite(x):
        raise DomainError(f"Canonical argument must be finite, got {x}.")
    u, up, v, vp = (float(a) for a in canonical_arrays(x))
    return CanonicalPair(x=x, u=u, up=up, v=v, vp=vp)


def nearest_u_zero_index(x: float) -> int:
    """Index `p = 2j` of the zero `-c~_(2j)` of `u` nearest to `x < 0`."""
    xi = float(zeta(x))
    return 2 * max(0, round((xi - 7 * pi / 12) / pi))


def nearest_up_zero_index(x: float) -> int:
    """Index `p = 2j + 1` of the zero `-c~_(2j+1)` of `u'` nearest to `x < 0`."""
    xi = float(zeta(x))
    return 2 * max(0, round((xi - 13 * pi / 12) / pi)) + 1


def ratio_vu(x: float, pole_guard: float | None = None) -> float:
    """Ratio `v/u`, increasing from the poles at `-c~_(2j)` and below `ALPHA` on `x >= 0`.

    Raises
    ------
    PoleError
        If `x` is within `pole_guard` of a zero of `u`.
    """
    pole_guard = get_settings().pole_guard if pole_guard is None else pole_guard
    pair = canonical_eval(min(x, 0.0))
    if x < 0 and abs(pair.u) < pole_guard * abs(pair.up):
        index = nearest_u_zero_index(x)
        raise PoleError(
            f"v/u has a pole at -c~_{index} within {pole_guard:g} of {x}.", "u", index
        )
    return float(ratio_vu_array(x))


def ratio_vpup(x: float, pole_guard: float | None = None) -> float:
    """Ratio `v'/u'`, with poles at the origin and at `-c~_(2j+1)`.

    Raises
    ------
    PoleError
        If `x` is within `pole_guard` of the origin or of a zero of `u'`.
    """
    pole_guard = get_settings().pole_guard if pole_guard is None else pole_guard
    if abs(x) < pole_guard:
        raise PoleError(f"v'/u' has a pole at the origin, {x} is too close.", "origin", 0)
    pair = canonical_eval(min(x, 0.0))
    if x < 0 and abs(pair.up) < pole_guard * abs(x * pair.u):
        index = nearest_up_zero_index(x)
        raise PoleError(
            f"v'/u' has a pole at -c~_{index} within {pole_guard:g} of {x}.", "u'", index
        )
    return float(ratio_vpup_array(x))


def ratio_derivative_bounds(x: float) -> tuple[float, float]:
    """Derivatives `(v/u)' = 1/u^2` and `(v'/u')' = -x/u'^2` on the negative axis.

    A component is infinite at a zero of its denominator.

    Raises
    ------
    DomainError
        If `x >= 0`.
    """
    if not isfinite(x) or x >= 0:
        raise DomainError(f"Ratio derivatives are bounded for x < 0, got {x}.")
    pair = canonical_eval(x)
    d_vu = float("inf") if pair.u == 0 else 1 / pair.u**2
    d_vpup = float("inf") if pair.up == 0 else -x / pair.up**2
    return d_vu, d_vpup


def canonical_trigonometric(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """`u, u', v, v'` from their rotated Airy forms."""
    ai, aip, bi, bip = airy_arrays(x)
    cos3, sin3 = np.cos(pi / 3), np.sin(pi / 3)
    return (
        -2 * pi * AIP0 * (cos3 * bi + sin3 * ai),
        -2 * pi * AIP0 * (cos3 * bip + sin3 * aip),
        2 * pi * AI0 * (cos3 * bi - sin3 * ai),
        2 * pi * AI0 * (cos3 * bip - sin3 * aip),
    )


def canonical_negative_asymptotic(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """`u(-x), u'(-x), v(-x), v'(-x)` for `x > 0` through the auxiliary pairs.

    Raises
    ------
    DomainError
        If any `x <= 0`.
    """
    x = check_finite(x)
    if np.any(x <= 0):
        raise DomainError("The auxiliary forms hold on the negative axis only.")
    xi = zeta(x)
    p1, q1 = aux_pq_arrays(1 / 3, xi)
    p2, q2 = aux_pq_arrays(2 / 3, xi)
    s, t = xi - 7 * pi / 12, xi + pi / 12
    root = 2 * sqrt(pi)
    return (
        root * x**-0.25 * AIP0 * (np.sin(s) * p1 + np.cos(s) * q1),
        -root * x**0.25 * AIP0 * (np.cos(s) * p2 - np.sin(s) * q2),
        -root * x**-0.25 * AI0 * (np.sin(t) * p1 + np.cos(t) * q1),
        root * x**0.25 * AI0 * (np.cos(t) * p2 - np.sin(t) * q2),
    )
