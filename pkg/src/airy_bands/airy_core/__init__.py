"""Airy functions on the real line and their Bessel auxiliary pairs.

Values come from `scipy.special.airy` and `scipy.special.airye`. Two independent kernels,
a Maclaurin series and Hankel-type asymptotic expansions, cross-check them and label
the regime of every point.
"""

from __future__ import annotations

from math import gamma, isfinite, log, pi, sqrt

import numpy as np
from scipy import special

from airy_bands.airy_core.types import AiryQuartet, AuxPQ
from airy_bands.errors import DomainError
from airy_bands.types import Array, ArrayLike, Regime

AI0 = 3 ** (-2 / 3) / gamma(2 / 3)
"""Ai(0)."""
AIP0 = -(3 ** (-1 / 3)) / gamma(1 / 3)
"""Ai'(0)."""
BI0 = sqrt(3) * AI0
"""Bi(0)."""
BIP0 = -sqrt(3) * AIP0
"""Bi'(0)."""
X_SWITCH = (1.5 * (-log(np.finfo(np.float64).eps) / 3)) ** (2 / 3)
"""Point where the series and asymptotic error models cross, about 6.87."""
X_UNDERFLOW = (1.5 * -log(np.finfo(np.float64).tiny)) ** (2 / 3)
"""Argument beyond which Ai underflows, about 104."""
XI_HANKEL = 25.0
"""Phase beyond which P and Q come from their expansions rather than from Airy values."""
SERIES_REL = 1e-17
"""Relative size of the last kept series term."""
SERIES_TERMS = 200
"""Largest number of series terms."""
ASYMPTOTIC_TERMS = 60
"""Largest number of asymptotic terms."""
NU_VALUES = (1 / 3, 2 / 3)
"""Supported orders of the auxiliary pair."""


def check_finite(x: ArrayLike) -> Array:
    """Convert to a float array, rejecting non-finite input."""
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Airy arguments must be finite.")
    return arr


def zeta(x: ArrayLike) -> Array:
    """Exponent `(2/3)|x|^(3/2)`."""
    return 2 / 3 * np.abs(np.asarray(x, dtype=np.float64)) ** 1.5


def regime(x: float) -> Regime:
    """Regime label of the independent kernel covering `x`."""
    if x < -X_SWITCH:
        return "negative_asymptotic"
    if x > X_SWITCH:
        return "positive_asymptotic"
    return "series"


def airy_arrays(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """Vectorized Ai, Ai', Bi, Bi'."""
    ai, aip, bi, bip = special.airy(check_finite(x))
    return ai, aip, bi, bip


def airy_scaled(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """Scaled Ai, Ai', Bi, Bi'.

    For `x > 0` Ai and Ai' are multiplied by `exp(zeta)` and Bi, Bi' by `exp(-zeta)`.
    For `x <= 0` the values are unscaled.
    """
    eai, eaip, ebi, ebip = special.airye(check_finite(x))
    return eai, eaip, ebi, ebip


def airy_eval(x: float) -> AiryQuartet:
    """Evaluate Ai, Ai', Bi and Bi' at `x`.

    Parameters
    ----------
    x
        Finite real argument.

    Returns
    -------
    AiryQuartet
        Values, the regime label and an underflow flag.

    Raises
    ------
    DomainError
        If `x` is not finite.
    """
    if not isfinite(x):
        raise DomainError(f"Airy argument must be finite, got {x}.")
    ai, aip, bi, bip = (float(v) for v in airy_arrays(x))
    return AiryQuartet(
        x=x,
        ai=ai,
        aip=aip,
        bi=bi,
        bip=bip,
        regime=regime(x),
        underflow=x > X_UNDERFLOW,
    )


def maclaurin_basis(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """Maclaurin basis `f, f', g, g'` with `f(0) = g'(0) = 1`, `f'(0) = g(0) = 0`.

    Both solve `y'' = x y`. Terms are summed until the last one falls below
    `SERIES_REL` of the partial sum everywhere.
    """
    x = check_finite(x)
    x3 = x**3
    safe = np.where(x == 0, 1.0, x)
    f_term = np.ones_like(x)
    g_term = x.copy()
    f, g = f_term.copy(), g_term.copy()
    fp, gp = np.zeros_like(x), np.ones_like(x)
    for k in range(1, SERIES_TERMS):
        f_term = f_term * x3 / ((3 * k - 1) * (3 * k))
        g_term = g_term * x3 / ((3 * k) * (3 * k + 1))
        f += f_term
        g += g_term
        fp += 3 * k * f_term / safe
        gp += (3 * k + 1) * g_term / safe
        if np.all(np.abs(f_term) <= SERIES_REL * np.abs(f)) and np.all(
            np.abs(g_term) <= SERIES_REL * np.maximum(np.abs(g), np.finfo(float).tiny)
        ):
            break
    return f, fp, g, gp


def airy_series(x: ArrayLike) -> tuple[Array, Array, Array, Array]:
    """Ai, Ai', Bi, Bi' from the Maclaurin kernel."""
    f, fp, g, gp = maclaurin_basis(x)
    return (
        AI0 * f + AIP0 * g,
        AI0 * fp + AIP0 * gp,
        BI0 * f + BIP0 * g,
        BI0 * fp + BIP0 * gp,
    )


def airy_u_coefficients(n: int) -> tuple[Array, Array]:
    """Coefficients `u_k` and `v_k` of the Airy asymptotic expansions."""
    u = np.ones(n)
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
    k = np.arange(n)
    v = np.where(k == 0, 1.0, -(6 * k + 1) / (6 * k - 1) * u)
    return u, v


def truncated_sum(coefficients: Array, t: Array) -> Array:
    """Sum `coefficients[k] * t^k`, stopping each entry at its smallest term."""
    total = np.zeros_like(t)
    previous = np.full_like(t, np.inf)
    active = np.ones_like(t, dtype=bool)
    power = np.ones_like(t)
    for coefficient in coefficients:
        term = coefficient * power
        active &= np.abs(term) < previous
        total = np.where(active, total + term, total)
        previous = np.where(active, np.abs(term), previous)
        power = power * t
    return total


def airy_asymptotic(x: ArrayLike, scaled: bool = False) -> tuple[Array, Array, Array, Array]:
    """Ai, Ai', Bi, Bi' from the asymptotic kernel, meaningful for `|x| >> 1`.

    With `scaled`, positive arguments are scaled as in `airy_scaled`.
    """
    x = check_finite(x)
    if np.any(x == 0):
        raise DomainError("The asymptotic kernel is undefined at zero.")
    u, v = airy_u_coefficients(ASYMPTOTIC_TERMS)
    z = zeta(x)
    ax = np.abs(x)
    quarter = ax**0.25
    sign = (-1.0) ** np.arange(ASYMPTOTIC_TERMS)
    # Positive axis
    decay = 1.0 if scaled else np.exp(-np.where(x > 0, z, 0.0))
    growth = 1.0 if scaled else np.exp(np.where(x > 0, z, 0.0))
    ai_pos = decay / (2 * sqrt(pi) * quarter) * truncated_sum(sign * u, 1 / z)
    aip_pos = -quarter * decay / (2 * sqrt(pi)) * truncated_sum(sign * v, 1 / z)
    bi_pos = growth / (sqrt(pi) * quarter) * truncated_sum(u, 1 / z)
    bip_pos = quarter * growth / sqrt(pi) * truncated_sum(v, 1 / z)
    # Negative axis through the auxiliary pairs
    p1, q1 = hankel_pq(NU_VALUES[0], z)
    p2, q2 = hankel_pq(NU_VALUES[1], z)
    c, s = np.cos(z - pi / 4), np.sin(z - pi / 4)
    ai_neg = (c * p1 - s * q1) / (sqrt(pi) * quarter)
    bi_neg = (-s * p1 - c * q1) / (sqrt(pi) * quarter)
    aip_neg = quarter * (s * p2 + c * q2) / sqrt(pi)
    bip_neg = quarter * (c * p2 - s * q2) / sqrt(pi)
    positive = x > 0
    return (
        np.where(positive, ai_pos, ai_neg),
        np.where(positive, aip_pos, aip_neg),
        np.where(positive, bi_pos, bi_neg),
        np.where(positive, bip_pos, bip_neg),
    )


def hankel_coefficients(nu: float, n: int) -> Array:
    """Hankel coefficients `a_k(nu) = prod_(i<=k) (4 nu^2 - (2i - 1)^2) / (k! 8^k)`."""
    a = np.ones(n)
    for k in range(1, n):
        a[k] = a[k - 1] * (4 * nu**2 - (2 * k - 1) ** 2) / (8 * k)
    return a


def hankel_pq(nu: float, xi: ArrayLike) -> tuple[Array, Array]:
    """P and Q of order `nu` from their large-`xi` expansions."""
    xi = np.asarray(xi, dtype=np.float64)
    a = hankel_coefficients(nu, 2 * ASYMPTOTIC_TERMS)
    sign = (-1.0) ** np.arange(ASYMPTOTIC_TERMS)
    t = 1 / xi**2
    p = truncated_sum(sign * a[0::2], t)
    q = truncated_sum(sign * a[1::2], t) / xi
    return p, q


def aux_pq_arrays(nu: float, xi: ArrayLike) -> tuple[Array, Array]:
    """Vectorized P and Q of order `nu`, inverted from Airy values below `XI_HANKEL`."""
    if not any(abs(nu - supported) < 1e-12 for supported in NU_VALUES):
        raise DomainError(f"Auxiliary order must be 1/3 or 2/3, got {nu}.")
    xi = check_finite(xi)
    if np.any(xi <= 0):
        raise DomainError("Auxiliary phase must be positive.")
    x = (1.5 * xi) ** (2 / 3)
    ai, aip, bi, bip = airy_arrays(-x)
    c, s = np.cos(xi - pi / 4), np.sin(xi - pi / 4)
    if nu < 0.5:
        a, b = sqrt(pi) * x**0.25 * ai, sqrt(pi) * x**0.25 * bi
        p, q = c * a - s * b, -s * a - c * b
    else:
        a, b = sqrt(pi) * x**-0.25 * aip, sqrt(pi) * x**-0.25 * bip
        p, q = s * a + c * b, c * a - s * b
    large = xi >= XI_HANKEL
    if np.any(large):
        p_large, q_large = hankel_pq(nu, np.where(large, xi, XI_HANKEL))
        p, q = np.where(large, p_large, p), np.where(large, q_large, q)
    return p, q


def aux_pq(nu: float, xi: float) -> AuxPQ:
    """Bessel auxiliary pair of order `nu` at phase `xi`.

    Raises
    ------
    DomainError
        If `xi <= 0` or `nu` is not one third or two thirds.
    """
    p, q = aux_pq_arrays(nu, xi)
    return AuxPQ(nu=nu, xi=xi, p=float(p), q=float(q))


def airy_modulus(x: float) -> tuple[float, float]:
    """Moduli `M = |Ai + i Bi|` and `N = |Ai' + i Bi'|` on the negative axis.

    Raises
    ------
    DomainError
        If `x > 0`.
    """
    if not isfinite(x) or x > 0:
        raise DomainError(f"Airy moduli are defined for x <= 0, got {x}.")
    ai, aip, bi, bip = (float(v) for v in airy_arrays(x))
    return float(np.hypot(ai, bi)), float(np.hypot(aip, bip))
