"""Vectorized bracketed root finding."""

from collections.abc import Callable

import numpy as np

from airy_bands.errors import InternalConsistencyError
from airy_bands.types import Array, ArrayLike

EPS = float(np.finfo(np.float64).eps)
"""Machine epsilon."""
MAX_ITERATIONS = 200
"""Bisection steps after which a bracket is returned as is."""


def bisect(
    fun: Callable[[Array], Array],
    lo: ArrayLike,
    hi: ArrayLike,
    sign_lo: ArrayLike | None = None,
    xtol: float = 0.0,
    rtol: float = 4 * EPS,
) -> tuple[Array, Array]:
    """Shrink many brackets at once around a sign change of `fun`.

    Parameters
    ----------
    fun
        Vectorized function, evaluated only at interior midpoints.
    lo
        Lower ends of the brackets.
    hi
        Upper ends of the brackets.
    sign_lo
        Sign of `fun` just above `lo`. Evaluated at both ends and checked when omitted.
    xtol
        Absolute bracket width at which to stop.
    rtol
        Relative bracket width at which to stop.

    Returns
    -------
    tuple[Array, Array]
        Final lower and upper ends.

    Raises
    ------
    InternalConsistencyError
        If `sign_lo` is omitted and some bracket has no sign change.
    """
    lo = np.array(lo, dtype=np.float64, copy=True, ndmin=1)
    hi = np.array(hi, dtype=np.float64, copy=True, ndmin=1)
    if sign_lo is None:
        f_lo, f_hi = np.sign(fun(lo)), np.sign(fun(hi))
        if np.any(f_lo * f_hi > 0):
            bad = int(np.flatnonzero(f_lo * f_hi > 0)[0])
            raise InternalConsistencyError(
                f"No sign change over [{lo[bad]}, {hi[bad]}]."
            )
        sign = np.where(f_lo == 0, -f_hi, f_lo)
    else:
        sign = np.broadcast_to(np.sign(np.asarray(sign_lo, dtype=np.float64)), lo.shape)
    for _ in range(MAX_ITERATIONS):
        width = hi - lo
        if np.all(width <= xtol + rtol * np.maximum(np.abs(lo), np.abs(hi))):
            break
        mid = 0.5 * (lo + hi)
        f_mid = np.sign(fun(mid))
        below = f_mid == sign
        exact = f_mid == 0
        lo = np.where(below | exact, mid, lo)
        hi = np.where(~below | exact, mid, hi)
    return lo, hi


def midpoint(lo: Array, hi: Array) -> Array:
    """Midpoints of brackets."""
    return 0.5 * (lo + hi)
