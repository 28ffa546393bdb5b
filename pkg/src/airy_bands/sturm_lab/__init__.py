"""Two-parameter functions `f_x`, `g_x`, their zero curves and the comparison identities.

For `x >= 0`,

    f_x(z) = pi (Bi'(x - z) Ai(x) - Ai'(x - z) Bi(x))
    g_x(z) = pi (Bi(x - z) Ai(x) - Ai(x - z) Bi(x))

so that `g_x' = -f_x` and `f_x' = -(x - z) g_x`. The zeros `z_(2j)` of `f_x` and
`z_(2j+1)` of `g_x` other than zero start at `c_k` for `x = 0` and increase with `x`.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from loguru import logger
from scipy.integrate import quad
from scipy.optimize import brentq

from airy_bands.airy_core import airy_arrays
from airy_bands.errors import DomainError, PreconditionError
from airy_bands.sturm_lab.types import (
    Coefficient,
    IdentityReport,
    PiconeReport,
    SignInterval,
    SignPatternReport,
    Solution,
    SturmProbe,
)
from airy_bands.types import Array, ArrayLike, Interval
from airy_bands.zeros import zero_tables

STEP = 1e-5
"""Central difference step."""
GRID_POINTS = 201
"""Grid size of the identity checks."""
SAMPLES = 9
"""Interior samples per sign interval."""
NEWTON_STEPS = 2
"""Newton steps polishing each zero."""
LEFT_MARGIN = 2.0
"""Extent of the sign check to the left of zero."""


def f_g_arrays(x: float, z: ArrayLike) -> tuple[Array, Array]:
    """Vectorized `f_x(z)`, `g_x(z)`."""
    if x < 0:
        raise DomainError(f"f_x and g_x are defined for x >= 0, got {x}.")
    ai, _, bi, _ = airy_arrays(x)
    ai_s, aip_s, bi_s, bip_s = airy_arrays(x - np.asarray(z, dtype=np.float64))
    return np.pi * (bip_s * ai - aip_s * bi), np.pi * (bi_s * ai - ai_s * bi)


def f_g_eval(x: float, z: float) -> tuple[float, float]:
    """`f_x(z)` and `g_x(z)`.

    Raises
    ------
    DomainError
        If `x < 0`.
    """
    f, g = f_g_arrays(x, z)
    return float(f), float(g)


def f_solution(x: float) -> Solution:
    """`f_x` with its derivative `-(x - z) g_x`."""

    def solution(z: Array) -> tuple[Array, Array]:
        f, g = f_g_arrays(x, z)
        return f, -(x - z) * g

    return solution


def g_solution(x: float) -> Solution:
    """`g_x` with its derivative `-f_x`."""

    def solution(z: Array) -> tuple[Array, Array]:
        f, g = f_g_arrays(x, z)
        return g, -f

    return solution


def richardson(fun: Callable[[Array], Array], points: Array, step: float = STEP) -> Array:
    """Central difference of `fun` with one Richardson extrapolation step."""
    coarse = (fun(points + step) - fun(points - step)) / (2 * step)
    fine = (fun(points + step / 2) - fun(points - step / 2)) / step
    return (4 * fine - coarse) / 3


def z_curve(k: int, x: float) -> float:
    """The zero `z_k(x)`, of `f_x` for even `k` and of `g_x` for odd `k`.

    Raises
    ------
    DomainError
        If `k < 0` or `x < 0`.
    """
    if k < 0 or x < 0:
        raise DomainError(f"z_k needs k >= 0 and x >= 0, got k = {k}, x = {x}.")
    tables = zero_tables(k + 2)
    index = 0 if k % 2 == 0 else 1
    z = brentq(
        lambda s: f_g_eval(x, s)[index],
        x + tables.frak_a[k],
        x + tables.frak_a[k + 1],
        xtol=1e-14,
    )
    for _ in range(NEWTON_STEPS):
        f, g = f_g_eval(x, z)
        step = f / (-(x - z) * g) if index == 0 else g / -f
        z -= step
    return float(z)


def sturm_probe(x: float, k_max: int) -> SturmProbe:
    """Zeros `z_0(x)..z_kmax(x)` with residuals and a derivative check."""
    z = np.array([z_curve(k, x) for k in range(k_max + 1)])
    f, g = f_g_arrays(x, z)
    residuals = np.where(np.arange(k_max + 1) % 2 == 0, np.abs(f), np.abs(g))
    grid = np.linspace(-LEFT_MARGIN, float(z[-1]) + 0.5, GRID_POINTS)
    f_grid, g_grid = f_g_arrays(x, grid)
    fp = richardson(lambda s: f_g_arrays(x, s)[0], grid)
    gp = richardson(lambda s: f_g_arrays(x, s)[1], grid)
    scale = max(1.0, float(np.max(np.abs(f_grid))), float(np.max(np.abs(g_grid))))
    derivative_residual = max(
        float(np.max(np.abs(gp + f_grid))), float(np.max(np.abs(fp + (x - grid) * g_grid)))
    ) / scale
    return SturmProbe(
        x=x,
        z=tuple(z.tolist()),
        residuals=tuple(residuals.tolist()),
        derivative_residual=derivative_residual,
    )


def sturm_identity_check(
    g1: Coefficient,
    g2: Coefficient,
    y: Solution,
    z: Solution,
    interval: Interval,
) -> IdentityReport:
    """Check `(y z' - z y')' = (g1 - g2) y z` for `y'' = g2 y` and `z'' = g1 z`.

    Also compares the Wronskian bracket over the interval with the integral of the
    right side.
    """
    a, b = interval

    def wronskian(s: Array) -> Array:
        (yv, yp), (zv, zp) = y(s), z(s)
        return yv * zp - zv * yp

    def right(s: Array) -> Array:
        s = np.asarray(s, dtype=np.float64)
        return (g1(s) - g2(s)) * y(s)[0] * z(s)[0]

    grid = np.linspace(a, b, GRID_POINTS)
    left_side = richardson(wronskian, grid)
    right_side = right(grid)
    scale = max(float(np.max(np.abs(right_side))), float(np.max(np.abs(wronskian(grid)))), 1e-300)
    residual = float(np.max(np.abs(left_side - right_side))) / scale
    ends = wronskian(np.array([a, b]))
    boundary = float(ends[1] - ends[0])
    integral = quad(lambda s: float(right(s)), a, b, epsabs=1e-13, epsrel=1e-12, limit=200)[0]
    agreement = abs(boundary - integral) / max(abs(boundary), abs(integral), scale * (b - a))
    logger.debug(f"Wronskian identity residual {residual:.2e} on [{a}, {b}]")
    return IdentityReport(
        interval=interval,
        residual=residual,
        boundary=boundary,
        integral=integral,
        agreement=agreement,
    )


def sturm_picone_check(
    q1: Coefficient,
    q2: Coefficient,
    g: Coefficient,
    y: Solution,
    z: Solution,
    interval: Interval,
    strict: bool = True,
) -> PiconeReport:
    """Check the Picone identity for `-(q1 z')' + g z = 0` and `-(q2 y')' + g y = 0`.

    The identity reads `(q1 z z' - q2 y' z^2 / y)' = (q1 - q2) z'^2 + q2 (z' - y' z / y)^2`.

    Parameters
    ----------
    q1
        Coefficient of the equation solved by `z`.
    q2
        Coefficient of the equation solved by `y`.
    g
        Common potential term.
    y
        Positive solution of the second equation.
    z
        Solution of the first equation.
    interval
        Checked interval.
    strict
        Require `q1 > q2` rather than `q1 >= q2`.

    Raises
    ------
    PreconditionError
        If `q1 > q2 > 0` or `y > 0` fails on the grid.
    """
    a, b = interval
    grid = np.linspace(a, b, GRID_POINTS)
    c1, c2, yv = q1(grid), q2(grid), y(grid)[0]
    ordered = c1 > c2 if strict else c1 >= c2
    if not (np.all(ordered) and np.all(c2 > 0)):
        raise PreconditionError(f"Picone identity needs q1 > q2 > 0 on [{a}, {b}].")
    if not np.all(yv > 0):
        raise PreconditionError(f"Picone identity needs y > 0 on [{a}, {b}].")

    def quantity(s: Array) -> Array:
        (ys, yp), (zs, zp) = y(s), z(s)
        return q1(s) * zs * zp - q2(s) * yp * zs**2 / ys

    (ys, yp), (zs, zp) = y(grid), z(grid)
    size = max(float(np.max(np.abs(ys))), float(np.max(np.abs(zs))), 1e-300)
    equation_residual = max(
        float(np.max(np.abs(richardson(lambda s: q1(s) * z(s)[1], grid) - g(grid) * zs))),
        float(np.max(np.abs(richardson(lambda s: q2(s) * y(s)[1], grid) - g(grid) * ys))),
    ) / size
    rhs = (c1 - c2) * zp**2 + c2 * (zp - yp * zs / ys) ** 2
    lhs = richardson(quantity, grid)
    scale = max(float(np.max(np.abs(rhs))), float(np.max(np.abs(quantity(grid)))), 1e-300)
    ends = quantity(np.array([a, b]))
    boundary = float(ends[1] - ends[0])
    dominance = None
    if np.min(c1 - c2) > 0:
        norm = quad(lambda s: float(z(np.asarray(s))[0] ** 2), a, b, limit=200)[0]
        dominance = boundary / norm if norm > 0 else None
    return PiconeReport(
        interval=interval,
        residual=float(np.max(np.abs(lhs - rhs))) / scale,
        rhs_nonnegative=bool(np.all(rhs >= 0)),
        boundary=boundary,
        dominance=dominance,
        equation_residual=equation_residual,
    )


def sign_pattern(x: float, k_max: int) -> SignPatternReport:
    """Sample the signs of `f_x`, `f_x'`, `g_x`, `g_x'` between consecutive breakpoints.

    `f_x` is positive left of `z_0` and changes sign at every `z_(2j)`. `g_x` is positive
    left of zero and changes sign at zero and at every `z_(2j+1)`. Derivatives are central
    differences, compared with `g' = -f` and `f' = -(x - z) g`.
    """
    zeros = [z_curve(k, x) for k in range(k_max + 1)]
    f_zeros = np.array(zeros[0::2])
    g_zeros = np.array([0.0, *zeros[1::2]])
    breaks = sorted({-LEFT_MARGIN, 0.0, x, *zeros})
    intervals: list[SignInterval] = []
    for lo, hi in zip(breaks, breaks[1:], strict=False):
        mid = 0.5 * (lo + hi)
        f_sign = -1 if np.count_nonzero(f_zeros <= lo) % 2 else 1
        g_sign = -1 if np.count_nonzero(g_zeros <= lo) % 2 else 1
        fp_sign = -int(np.sign(x - mid)) * g_sign
        gp_sign = -f_sign
        samples = np.linspace(lo, hi, SAMPLES + 2)[1:-1]
        f, g = f_g_arrays(x, samples)
        fp = richardson(lambda s: f_g_arrays(x, s)[0], samples)
        gp = richardson(lambda s: f_g_arrays(x, s)[1], samples)
        ok = bool(
            np.all(np.sign(f) == f_sign)
            and np.all(np.sign(g) == g_sign)
            and np.all(np.sign(fp) == fp_sign)
            and np.all(np.sign(gp) == gp_sign)
        )
        intervals.append(
            SignInterval(lo=lo, hi=hi, f=f_sign, fp=fp_sign, g=g_sign, gp=gp_sign, ok=ok)
        )
    return SignPatternReport(
        x=x,
        zeros=tuple(zeros),
        intervals=tuple(intervals),
        consistent=all(interval.ok for interval in intervals),
    )
