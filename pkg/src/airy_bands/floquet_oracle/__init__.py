"""Independent band edges from the Floquet discriminant of the periodic operator.

The potential is `|y| - c` on `[-c, c]`, extended with period `2c`. The even and odd
solutions at the well bottom are integrated to the barrier top, and the monodromy over
one period follows from reflection symmetry. With `phi_e`, `phi_o` evaluated at the top,
`Delta - 2 = 4 phi_e' phi_o` and `Delta + 2 = 4 phi_e phi_o'`, so edges are zeros of
these four factors.
"""

from __future__ import annotations

from math import sqrt

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp

from airy_bands.errors import BracketError, DomainError, IntegrationError
from airy_bands.floquet_oracle.types import (
    DiscriminantScan,
    EdgeBracket,
    Monodromy,
    OracleEdge,
)
from airy_bands.roots import bisect, midpoint
from airy_bands.settings import get_settings
from airy_bands.types import Array, ArrayLike, EdgeEquation, FloquetSign, Interval

MIN_RTOL = 2.3e-14
"""Smallest relative tolerance accepted by the integrators."""
MAX_GROWTH = 600.0
"""Largest exponential growth of a solution over a half period."""
SCAN_WIDTH = 1e-9
"""Bracket width of a discriminant scan, and the distance below which crossings merge."""
EDGE_XTOL = 1e-13
"""Absolute tolerance of refined oracle edges."""
BELOW_BOTTOM = 5.0
"""How far below the well bottom a scan may start."""

FACTORS: dict[EdgeEquation, tuple[int, FloquetSign]] = {
    "U": (0, -2),
    "U_prime": (1, 2),
    "V": (2, 2),
    "V_prime": (3, -2),
}
"""Row of each factor in `(phi_e, phi_e', phi_o, phi_o')` and the family it belongs to."""


def check_tolerance(tol: float):
    """Raise unless `tol` lies in `[1e-13, 1e-6]`."""
    if not 1e-13 <= tol <= 1e-6:
        raise DomainError(f"Tolerance must lie in [1e-13, 1e-6], got {tol}.")


def check_depth(c: float):
    """Raise when solutions would overflow over a half period."""
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}.")
    if 2 / 3 * c**1.5 > MAX_GROWTH:
        raise DomainError(f"Solutions overflow over the half period at c = {c}.")


def half_period(
    c: float, energies: ArrayLike, tol: float | None = None
) -> tuple[Array, int]:
    """Even and odd solutions at the barrier top for many energies.

    Returns
    -------
    tuple[Array, int]
        Rows `phi_e, phi_e', phi_o, phi_o'` at `y = c`, one column per energy, and the
        number of integrator steps.

    Raises
    ------
    IntegrationError
        If the integrator fails.
    """
    settings = get_settings()
    tol = settings.tol if tol is None else tol
    check_tolerance(tol)
    check_depth(c)
    energies = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    n = energies.size
    rtol = max(tol / sqrt(4 * n), MIN_RTOL)

    def rhs(y: float, state: Array) -> Array:
        s = state.reshape(4, n)
        q = y - c - energies
        return np.concatenate([s[1], q * s[0], s[3], q * s[2]])

    start = np.concatenate([np.ones(n), np.zeros(n), np.zeros(n), np.ones(n)])
    sol = solve_ivp(
        rhs,
        (0.0, c),
        start,
        method=settings.oracle_method,
        rtol=rtol,
        atol=rtol,
    )
    if sol.status < 0:
        raise IntegrationError(f"Half-period integration failed: {sol.message}", float(sol.t[-1]))
    return sol.y[:, -1].reshape(4, n), int(sol.t.size - 1)


def monodromy(c: float, energy: float, tol: float | None = None) -> Monodromy:
    """Monodromy matrix and discriminant at one energy.

    Parameters
    ----------
    c
        Well depth.
    energy
        Rescaled energy.
    tol
        Integration tolerance in `[1e-13, 1e-6]`, the configured one by default.

    Raises
    ------
    DomainError
        If `tol` or `c` is out of range.
    IntegrationError
        If the integrator fails.
    """
    tol = get_settings().tol if tol is None else tol
    values, steps = half_period(c, [energy], tol)
    fe, fep, fo, fop = values[:, 0].tolist()
    matrix = (
        (fe * fop + fo * fep, 2 * fe * fo),
        (2 * fep * fop, fep * fo + fop * fe),
    )
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    return Monodromy(
        energy=energy,
        matrix=matrix,
        discriminant=2 + 4 * fep * fo,
        step_count=steps,
        error_estimate=abs(det - 1),
        tol=tol,
    )


def potential(y: float, c: float) -> float:
    """Periodic potential `|y| - c` reduced to one period."""
    return abs((y + c) % (2 * c) - c) - c


def propagate_period(
    c: float, energy: float, start: float = 0.0, tol: float | None = None
) -> Array:
    """Transfer matrix over `[start, start + 2c]` by direct integration.

    The integration restarts at every kink of the potential, so the matrix does not rely
    on the reflection symmetry used by `monodromy`.

    Raises
    ------
    IntegrationError
        If the integrator fails.
    """
    settings = get_settings()
    tol = settings.tol if tol is None else tol
    check_tolerance(tol)
    check_depth(c)
    end = start + 2 * c
    kinks = c * np.arange(np.floor(start / c) + 1, np.ceil(end / c))
    nodes = [start, *[k for k in kinks.tolist() if start < k < end], end]
    state = np.array([1.0, 0.0, 0.0, 1.0])
    rtol = max(tol / 2, MIN_RTOL)
    for left, right in zip(nodes, nodes[1:], strict=False):
        mid = 0.5 * (left + right)
        slope = 1.0 if (mid + c) % (2 * c) >= c else -1.0
        offset = potential(mid, c) - slope * mid

        def rhs(y: float, s: Array, slope: float = slope, offset: float = offset) -> Array:
            q = slope * y + offset - energy
            return np.array([s[1], q * s[0], s[3], q * s[2]])

        sol = solve_ivp(
            rhs, (left, right), state, method=settings.oracle_method, rtol=rtol, atol=rtol
        )
        if sol.status < 0:
            raise IntegrationError(f"Period integration failed: {sol.message}", float(sol.t[-1]))
        state = sol.y[:, -1]
    return np.array([[state[0], state[2]], [state[1], state[3]]])


def scan_discriminant(
    c: float, energy_range: Interval, n: int | None = None, tol: float | None = None
) -> DiscriminantScan:
    """Sample the discriminant and bracket every zero of its four factors.

    Raises
    ------
    DomainError
        If `n < 16` or the range is empty or starts far below the well bottom.
    """
    n = get_settings().oracle_samples if n is None else n
    lo, hi = energy_range
    if n < 16:
        raise DomainError(f"A scan needs at least 16 samples, got {n}.")
    if not -c - BELOW_BOTTOM <= lo < hi:
        raise DomainError(f"Invalid scan range [{lo}, {hi}] at c = {c}.")
    grid = np.linspace(lo, hi, n)
    values, _ = half_period(c, grid, tol)
    signs = np.sign(values)
    lows: list[float] = []
    highs: list[float] = []
    names: list[EdgeEquation] = []
    for name, (row, _) in FACTORS.items():
        cells = np.flatnonzero(signs[row, :-1] * signs[row, 1:] < 0)
        lows += grid[cells].tolist()
        highs += grid[cells + 1].tolist()
        names += [name] * cells.size
    brackets = refine_brackets(c, np.array(lows), np.array(highs), names, tol)
    logger.debug(f"Bracketed {len(brackets)} edges in [{lo}, {hi}] at c = {c}")
    return DiscriminantScan(
        c=c,
        grid=tuple(grid.tolist()),
        values=tuple((2 + 4 * values[1] * values[2]).tolist()),
        edge_brackets=brackets,
    )


def factor_values(c: float, energies: Array, names: list[EdgeEquation], tol: float | None) -> Array:
    """Each requested factor at its own energy."""
    values, _ = half_period(c, energies, tol)
    rows = np.array([FACTORS[name][0] for name in names])
    return values[rows, np.arange(energies.size)]


def refine_brackets(
    c: float, lo: Array, hi: Array, names: list[EdgeEquation], tol: float | None
) -> tuple[EdgeBracket, ...]:
    """Shrink factor brackets together and merge crossings closer than the scan width."""
    if lo.size == 0:
        return ()
    lo, hi = bisect(
        lambda e: factor_values(c, e, names, tol),
        lo,
        hi,
        sign_lo=factor_values(c, lo, names, tol),
        xtol=SCAN_WIDTH,
        rtol=0.0,
    )
    order = np.argsort(lo)
    merged: list[EdgeBracket] = []
    for i in order.tolist():
        name = names[i]
        bracket = EdgeBracket(
            lo=float(lo[i]), hi=float(hi[i]), sign=FACTORS[name][1], factor=name
        )
        if merged and bracket.lo - merged[-1].hi < SCAN_WIDTH:
            previous = merged[-1]
            logger.info(f"Merged crossings of {previous.factor} and {name} near {bracket.lo}")
            bracket = previous.model_copy(
                update={"hi": max(previous.hi, bracket.hi), "degenerate": True}
            )
            merged[-1] = bracket
            continue
        merged.append(bracket)
    return tuple(merged)


def oracle_edge(
    c: float, bracket: Interval, sign: FloquetSign, tol: float | None = None
) -> float:
    """Refine one edge of the `Delta = sign` family inside a bracket.

    Raises
    ------
    BracketError
        If the factored form of `Delta - sign` does not change sign over the bracket.
    """
    rows = (1, 2) if sign == 2 else (0, 3)

    def product(e: Array) -> Array:
        values, _ = half_period(c, e, tol)
        return values[rows[0]] * values[rows[1]]

    lo, hi = bracket
    ends = product(np.array([lo, hi]))
    if ends[0] * ends[1] > 0:
        raise BracketError(f"No edge of the {sign:+d} family in [{lo}, {hi}] at c = {c}.")
    if ends[0] == 0:
        return lo
    if ends[1] == 0:
        return hi
    lo_, hi_ = bisect(product, [lo], [hi], sign_lo=ends[0], xtol=EDGE_XTOL)
    return float(midpoint(lo_, hi_)[0])


def oracle_band_edges(
    c: float, energy_range: Interval, n: int | None = None, tol: float | None = None
) -> tuple[OracleEdge, ...]:
    """All band edges in a range, refined and ordered."""
    scan = scan_discriminant(c, energy_range, n, tol)
    return tuple(
        OracleEdge(
            energy=0.5 * (b.lo + b.hi) if b.degenerate else oracle_edge(c, (b.lo, b.hi), b.sign, tol),
            sign=b.sign,
            factor=b.factor,
            degenerate=b.degenerate,
        )
        for b in scan.edge_brackets
    )
