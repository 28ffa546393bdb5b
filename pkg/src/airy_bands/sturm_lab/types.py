"""Types."""

from collections.abc import Callable
from typing import TypeAlias

from airy_bands import ContextModel
from airy_bands.types import Array, Interval

Coefficient: TypeAlias = Callable[[Array], Array]
"""Vectorized coefficient of a second-order equation."""
Solution: TypeAlias = Callable[[Array], tuple[Array, Array]]
"""Vectorized solution returning its value and derivative."""


class SturmProbe(ContextModel):
    """Zeros `z_0(x) < z_1(x) < ...` of `f_x` and `g_x` at one `x`."""

    x: float
    """Parameter."""
    z: tuple[float, ...]
    """Zeros, `f_x` vanishing at even and `g_x` at odd positions."""
    residuals: tuple[float, ...]
    """`|f_x(z_2j)|` and `|g_x(z_(2j+1))|`."""
    derivative_residual: float
    """Largest deviation of `g' = -f` and `f' = -(x - z) g` from central differences."""


class IdentityReport(ContextModel):
    """Finite-difference check of the Wronskian identity for two equations."""

    interval: Interval
    """Checked interval."""
    residual: float
    """Largest normalized pointwise residual."""
    boundary: float
    """Wronskian bracket between the interval ends."""
    integral: float
    """Integral of the coefficient difference times both solutions."""
    agreement: float
    """Normalized difference between `boundary` and `integral`."""


class PiconeReport(ContextModel):
    """Finite-difference check of the Picone identity."""

    interval: Interval
    """Checked interval."""
    residual: float
    """Largest normalized pointwise residual."""
    rhs_nonnegative: bool
    """Right side is non-negative at every grid point."""
    boundary: float
    """Bracket of the Picone quantity between the interval ends."""
    dominance: float | None
    """Ratio of `boundary` to the integral of `z^2`, when `q1 - q2` stays positive."""
    equation_residual: float
    """How far `y` and `z` are from solving their equations, relative to the size of `y`."""


class SignInterval(ContextModel):
    """Expected signs of `f, f', g, g'` between consecutive breakpoints."""

    lo: float
    """Left end."""
    hi: float
    """Right end."""
    f: int
    """Expected sign of `f_x`."""
    fp: int
    """Expected sign of `f_x'`."""
    g: int
    """Expected sign of `g_x`."""
    gp: int
    """Expected sign of `g_x'`."""
    ok: bool
    """Every sample has the expected signs."""


class SignPatternReport(ContextModel):
    """Sampled sign pattern of `f_x`, `g_x` and their derivatives."""

    x: float
    """Parameter."""
    zeros: tuple[float, ...]
    """Zeros `z_0..z_kmax`."""
    intervals: tuple[SignInterval, ...]
    """Checked intervals."""
    consistent: bool
    """Every interval matches."""
