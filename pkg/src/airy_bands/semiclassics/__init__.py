"""Small-`h` approximations of band edges, widths and gaps.

Edges of band `p` sit near `-c + frak_a_p`, split by a tunneling correction of order
`exp(-(4/3)/h + 2 frak_a_p h^(-1/3))` whose prefactor comes from the canonical solutions
at the Airy zero.
"""

from __future__ import annotations

from math import log, pi, sqrt

from airy_bands.canonical import ALPHA, canonical_arrays
from airy_bands.errors import DomainError, ValidityError
from airy_bands.semiclassics.types import Quantity, SemiclassicalEstimate
from airy_bands.settings import get_settings
from airy_bands.types import EdgeKind
from airy_bands.zeros import zero_tables

DENSITY_LIMIT = (2 / 3) ** (1 / 3)
"""Limit of the upper bound on the spectral density as `h` goes to zero."""
RESOLUTION_REL = 1e-14
"""Relative resolution of solved edges, in units of `c`."""


def prefactor(p: int) -> float:
    """Squared canonical amplitude at the `p`-th merged Airy zero.

    `u'(-a~_(j+1))^2 / a~_(j+1)` for even `p`, `u(-a_(j+1))^2` for odd `p`.
    """
    tables = zero_tables(p + 2)
    zero = tables.frak_a[p]
    u, up, _, _ = canonical_arrays(-zero)
    return float(up**2 / zero if p % 2 == 0 else u**2)


def log_correction(p: int, h: float, refined: bool = False) -> float:
    """Logarithm of `alpha sqrt(3) K_p exp(-(4/3)/h + 2 frak_a_p h^(-1/3))`.

    With `refined`, the exponent is the full barrier action `-(4/3) (c - frak_a_p)^(3/2)`,
    which keeps the terms of order `h^(1/3)` and beyond that the leading form drops.
    """
    zero = zero_tables(p + 2).frak_a[p]
    if refined:
        exponent = -4 / 3 * max(h ** (-2 / 3) - zero, 0.0) ** 1.5
    else:
        exponent = -4 / (3 * h) + 2 * zero * h ** (-1 / 3)
    return log(ALPHA * sqrt(3) * prefactor(p)) + exponent


def check_validity(quantity: Quantity, p: int, h: float, bound: float, closed: bool):
    """Raise when `h` lies outside `(0, bound]` or `(0, bound)`."""
    if p < 0 or h <= 0:
        raise DomainError(f"Estimates need p >= 0 and h > 0, got p = {p}, h = {h}.")
    if h > bound or (h == bound and not closed):
        raise ValidityError(
            f"The {quantity} estimate for p = {p} holds for h {'<=' if closed else '<'} {bound}, got {h}.",
            bound,
        )


def make_estimate(
    quantity: Quantity,
    p: int,
    h: float,
    leading: float,
    log_exponential: float,
    sign: int,
    bound: float,
    closed: bool,
) -> SemiclassicalEstimate:
    """Assemble an estimate and flag corrections below edge resolution."""
    c = h ** (-2 / 3)
    return SemiclassicalEstimate(
        quantity=quantity,
        p=p,
        h=h,
        leading=leading,
        log_exponential=log_exponential,
        sign=sign,
        validity_bound=bound,
        validity_closed=closed,
        below_solver_resolution=log_exponential < log(RESOLUTION_REL * c),
    )


def estimate_edge(p: int, kind: EdgeKind, h: float, refined: bool = False) -> SemiclassicalEstimate:
    """Approximate lower or upper edge of band `p`.

    Raises
    ------
    DomainError
        If `p < 0` or `h <= 0`.
    ValidityError
        If `h` is too large for the approximation.
    """
    if p < 0:
        raise DomainError(f"Band index must be non-negative, got {p}.")
    tables = zero_tables(p + 2)
    zero = tables.frak_a[p]
    if kind == "min":
        bound, closed = (zero + get_settings().tau) ** (-3 / 2), True
    else:
        bound, closed = tables.c[p] ** (-3 / 2), False
    check_validity(f"{kind} edge", p, h, bound, closed)  # pyright: ignore[reportArgumentType]
    return make_estimate(
        "e_min" if kind == "min" else "e_max",
        p,
        h,
        -(h ** (-2 / 3)) + zero,
        log_correction(p, h, refined),
        -1 if kind == "min" else 1,
        bound,
        closed,
    )


def estimate_width(p: int, h: float, refined: bool = False) -> SemiclassicalEstimate:
    """Approximate width `2 alpha sqrt(3) K_p exp(...)` of band `p`.

    Raises
    ------
    DomainError
        If `p < 0` or `h <= 0`.
    ValidityError
        If `h >= c_p^(-3/2)`.
    """
    if p < 0:
        raise DomainError(f"Band index must be non-negative, got {p}.")
    bound = zero_tables(p + 2).c[p] ** (-3 / 2)
    check_validity("width", p, h, bound, False)
    return make_estimate("width", p, h, 0.0, log(2) + log_correction(p, h, refined), 1, bound, False)


def estimate_gap(p: int, h: float, refined: bool = False) -> SemiclassicalEstimate:
    """Approximate gap between bands `p` and `p + 1`.

    Raises
    ------
    DomainError
        If `p < 0` or `h <= 0`.
    ValidityError
        If `h > (frak_a_(p+1) + tau)^(-3/2)`.
    """
    if p < 0:
        raise DomainError(f"Gap index must be non-negative, got {p}.")
    tables = zero_tables(p + 3)
    bound = (tables.frak_a[p + 1] + get_settings().tau) ** (-3 / 2)
    check_validity("gap", p, h, bound, True)
    return make_estimate(
        "gap",
        p,
        h,
        tables.frak_a[p + 1] - tables.frak_a[p],
        log_correction(p + 1, h, refined),
        -1,
        bound,
        True,
    )


def residual_ratio(estimate: SemiclassicalEstimate, solver_value: float) -> float | None:
    """Ratio of the solved correction to the estimated one, or `None` when unresolvable."""
    if estimate.below_solver_resolution:
        return None
    return (solver_value - estimate.leading) / estimate.correction


def large_h_residual(h: float, e_min0: float) -> float:
    """Residual `h^(2/3) E_min^0 + 1/2 + 1/(120 h^2)` of the large-`h` expansion of the bottom edge.

    Raises
    ------
    DomainError
        If `h <= 0`.
    """
    if h <= 0:
        raise DomainError(f"h must be positive, got {h}.")
    return h ** (2 / 3) * e_min0 + 0.5 + 1 / (120 * h**2)


def density_bound_terms(p: int) -> float:
    """Explicit upper bound on the width of band `p >= 2` contained in the range.

    Raises
    ------
    DomainError
        If `p < 2`.
    """
    if p < 2:
        raise DomainError(f"The width bound starts at p = 2, got {p}.")
    return (
        (pi / 3 + 7 / (3 * pi) * (p + 1 / 3) / (p * (p + 2 / 3)))
        * (3 / pi) ** (1 / 3)
        * p ** (-1 / 3)
    )

